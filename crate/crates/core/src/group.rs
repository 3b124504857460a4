//! Finite groups by Cayley table.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    order: usize,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    generators: Option<Vec<Vec<usize>>>,
}

impl GroupData {
    /// Validates a Cayley table: square, Latin, with identity, associative.
    pub fn new(cayley: Vec<Vec<usize>>) -> Result<GroupData> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if cayley.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup(format!("table must be {n}x{n}")));
        }
        if cayley.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| cayley[e][g] == g && cayley[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for i in 0..n {
            let mut row = cayley[i].clone();
            row.sort_unstable();
            let mut col: Vec<usize> = (0..n).map(|j| cayley[j][i]).collect();
            col.sort_unstable();
            if row.iter().enumerate().any(|(k, &x)| k != x) {
                return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
            }
            if col.iter().enumerate().any(|(k, &x)| k != x) {
                return Err(Error::InvalidGroup(format!("column {i} is not a permutation")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupData {
            order: n,
            cayley,
            identity,
            generators: None,
        })
    }

    /// The group generated by permutations of `0..degree`, listed in
    /// breadth-first order from the identity. Composition is `(s t)(x) = s(t(x))`.
    pub fn from_permutations(generators: Vec<Vec<usize>>) -> Result<GroupData> {
        let degree = generators.first().map_or(0, Vec::len);
        for g in &generators {
            let mut s = g.clone();
            s.sort_unstable();
            if g.len() != degree || s.iter().enumerate().any(|(k, &x)| k != x) {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let p = compose(g, &elements[i]);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let cayley = elements
            .iter()
            .map(|s| elements.iter().map(|t| index[&compose(s, t)]).collect())
            .collect();
        let mut g = GroupData::new(cayley)?;
        g.generators = Some(generators);
        Ok(g)
    }

    /// Cyclic group of order `n`, element `k` being the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> GroupData {
        let cayley = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupData::new(cayley).expect("cyclic table")
    }

    /// Symmetric group on `n` points, permutations in lexicographic order
    /// (index 0 is the identity).
    pub fn symmetric(n: usize) -> GroupData {
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let cayley = perms
            .iter()
            .map(|s| perms.iter().map(|t| index[&compose(s, t)]).collect())
            .collect();
        GroupData::new(cayley).expect("symmetric table")
    }

    /// Quaternion group with elements ordered `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> GroupData {
        // unit products of 1, i, j, k as (sign, unit)
        const UNITS: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let idx = |neg: bool, u: usize| 2 * u + usize::from(neg);
        let cayley = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (na, ua) = (a % 2 == 1, a / 2);
                        let (nb, ub) = (b % 2 == 1, b / 2);
                        let (n, u) = UNITS[ua][ub];
                        idx(n ^ na ^ nb, u)
                    })
                    .collect()
            })
            .collect();
        GroupData::new(cayley).expect("quaternion table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn generators(&self) -> Option<&[Vec<usize>]> {
        self.generators.as_deref()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.cayley[a][b] == self.identity)
            .expect("Latin square has inverses")
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse(g))
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        !set.is_empty()
            && set.iter().all(|&x| x < self.order)
            && set.contains(&self.identity)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let set: BTreeSet<usize> = subgroup.iter().copied().collect();
        (0..self.order).all(|g| set.iter().all(|&h| set.contains(&self.conjugate(g, h))))
    }

    /// Smallest subgroup containing `elements`, sorted.
    pub fn closure(&self, elements: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = elements.iter().copied().collect();
        set.insert(self.identity);
        loop {
            let new: Vec<usize> = set
                .iter()
                .flat_map(|&a| set.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.mul(a, b))
                .filter(|x| !set.contains(x))
                .collect();
            if new.is_empty() {
                return set.into_iter().collect();
            }
            set.extend(new);
        }
    }

    /// Every subgroup, each as a sorted index list, ordered by size then content.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = frontier.pop() {
            for g in 0..self.order {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// The subgroup on the sorted members of `elements` as a group in its own
    /// right, together with those members (new index `i` is old `members[i]`).
    pub fn subgroup_data(&self, elements: &[usize]) -> Result<(GroupData, Vec<usize>)> {
        if !self.is_subgroup(elements) {
            return Err(Error::NotSubgroup(format!("{elements:?}")));
        }
        let members: Vec<usize> = elements.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let cayley = members
            .iter()
            .map(|&a| members.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        Ok((GroupData::new(cayley)?, members))
    }
}

fn compose(s: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&x| s[x]).collect()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let s3 = GroupData::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert_eq!(s3.all_subgroups().len(), 6);
        // A3 = {id, (012), (021)} sits at indices 0, 3, 4
        assert!(s3.is_subgroup(&[0, 3, 4]));
        assert!(s3.is_normal(&[0, 3, 4]));
        assert!(s3.is_subgroup(&[0, 2]));
        assert!(!s3.is_normal(&[0, 2]));

        let q8 = GroupData::quaternion();
        assert_eq!(q8.all_subgroups().len(), 6);
        assert!(q8.all_subgroups().iter().all(|h| q8.is_normal(h)));
        // i^2 = -1, ij = k, ji = -k
        assert_eq!(q8.mul(2, 2), 1);
        assert_eq!(q8.mul(2, 4), 6);
        assert_eq!(q8.mul(4, 2), 7);
    }

    #[test]
    fn permutations_generate_s3() {
        let g = GroupData::from_permutations(vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.generators().is_some());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(GroupData::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupData::new(vec![vec![1, 0], vec![0, 0]]).is_err());
        let c4 = GroupData::cyclic(4);
        assert!(matches!(c4.subgroup_data(&[0, 1]), Err(Error::NotSubgroup(_))));
        assert_eq!(c4.subgroup_data(&[2, 0]).unwrap().1, vec![0, 2]);
    }
}
