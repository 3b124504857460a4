use std::ffi::CString;
use std::sync::Once;

use pyo3::prelude::*;
use pyo3::types::PyDict;
use ringext_py::ringext_py;

fn python<R>(f: impl FnOnce(Python<'_>) -> R) -> R {
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        pyo3::append_to_inittab!(ringext_py);
        Python::initialize();
    });
    Python::attach(f)
}

fn run(code: &str) {
    python(|py| {
        let code = CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&PyDict::new(py)), None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn classifies_corpus_entry() {
    run(r#"
import ringext_py as r
x = r.RingExtension.from_corpus("q-s3-over-q-a3")
assert x.dims() == {"square": 12, "r": 4, "s": 8, "t": 8}, x.dims()
c = x.classify()
assert c["separable"] and c["split"] and c["left_d2"] and c["right_d2"]
assert not c["h_separable"]
"#);
}

#[test]
fn certificates_verify_from_python() {
    run(r#"
import json, ringext_py as r
doc = r.corpus_document("q-c2-over-q")
x = r.RingExtension(json.dumps(doc))
rep = x.certify("separable")
assert rep["verdict"] is True
assert r.verify(rep)["all_verified"] is True
rep["certificates"]["separability_element"]["e"][0] = "7"
assert r.verify(rep)["all_verified"] is False
"#);
}

#[test]
fn input_errors_raise_value_error() {
    run(r#"
import ringext_py as r
try:
    r.validate('{"field": "Q", ')
except ValueError as e:
    assert "line" in str(e)
else:
    raise AssertionError("expected ValueError")
try:
    r.RingExtension({"field": {"Fp": 4}, "algebra": {"group": {"order": 1, "cayley": [[0]]}}, "subalgebra": "ground"})
except ValueError as e:
    assert "not prime" in str(e), str(e)
else:
    raise AssertionError("expected ValueError")
"#);
}
