use pyo3::prelude::*;
use pyo3::types::PyModule;

fn module(py: Python<'_>) -> Bound<'_, PyModule> {
    let m = PyModule::new(py, "vosa").unwrap();
    vosa::register(&m).unwrap();
    m
}

#[test]
fn sigma_algebra_from_python() {
    Python::attach(|py| {
        let m = module(py);
        let a = m.getattr("zhu_algebra").unwrap().call1((2,)).unwrap();
        assert_eq!(a.getattr("dim").unwrap().extract::<usize>().unwrap(), 4);
        assert_eq!(a.getattr("blocks").unwrap().extract::<Vec<usize>>().unwrap(), vec![2]);
        let c = m.getattr("central_charge").unwrap().call1((3,)).unwrap();
        assert_eq!(c.str().unwrap().to_string(), "3/2");
        let bad = m.getattr("zhu_algebra").unwrap().call1((2, "nope"));
        assert!(bad.is_err());
    });
}
