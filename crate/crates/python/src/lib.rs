//! Python bindings. Rational numbers cross the boundary as
//! `fractions.Fraction`; weights may be passed as strings like `"5/2"`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use vosa_core::fields::verify::CheckReport;
use vosa_core::fields::{IterField, ModVec, VertexModule};
use vosa_core::fock::TwistKind;
use vosa_core::lie::{check_jacobi, sample_symbols};
use vosa_core::modules::{induce_truncated, standard_setup, DirectSum, OmegaSpace, TauTable, TwistedModule, ZhuModule};
use vosa_core::scalar::format_scalar;
use vosa_core::sparse::SparseVec;
use vosa_core::zhu::{build_algebra, center_and_idempotents, TwistContext, ZeroModeRep, ZhuAlgebraResult, ZhuOptions};
use vosa_core::{FracIndex, Scalar, VosaError};

type Dims = Vec<(String, usize)>;
type Triple<'py> = (usize, usize, usize, Bound<'py, PyAny>);

fn err(e: VosaError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, x: &Scalar) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_scalar(x),))
}

fn weight(s: &str) -> PyResult<FracIndex> {
    s.trim().parse().map_err(err)
}

fn kind(twist: &str) -> PyResult<TwistKind> {
    match twist {
        "id" => Ok(TwistKind::Id),
        "sigma" => Ok(TwistKind::Sigma),
        "tau" => Ok(TwistKind::Tau),
        t => Err(PyValueError::new_err(format!("unknown twist '{t}', expected id, sigma or tau"))),
    }
}

fn setup(l: usize, twist: &str, tau_table: Option<&str>) -> PyResult<(TwistContext, Vec<(String, TwistedModule)>)> {
    let table: Option<TauTable> = tau_table.map(str::parse).transpose().map_err(err)?;
    let l = match &table {
        Some(t) => t.realize().map_err(err)?.0.dim(),
        None => l,
    };
    standard_setup(kind(twist)?, l, table.as_ref()).map_err(err)
}

fn omegas(mods: &[(String, TwistedModule)], deg: FracIndex) -> PyResult<Vec<(String, OmegaSpace<TwistedModule>)>> {
    mods.iter().map(|(n, m)| Ok((n.clone(), OmegaSpace::compute(m.clone(), deg).map_err(err)?))).collect()
}

/// A computed twisted Zhu algebra `A_g(V)` with its multiplication table.
#[pyclass(frozen, module = "vosa")]
struct ZhuAlgebra {
    res: ZhuAlgebraResult,
    blocks: Vec<usize>,
    center_dim: usize,
    semisimple: bool,
}

#[pymethods]
impl ZhuAlgebra {
    #[getter]
    fn dim(&self) -> usize {
        self.res.dim()
    }

    /// Whether the truncation bound equals the rank of the module action.
    #[getter]
    fn certified(&self) -> bool {
        self.res.certified
    }

    #[getter]
    fn closed(&self) -> bool {
        self.res.reducer.closed
    }

    #[getter]
    fn stabilized(&self) -> Option<bool> {
        self.res.stabilized
    }

    #[getter]
    fn dim_lower(&self) -> Option<usize> {
        self.res.dim_lower
    }

    #[getter]
    fn basis_labels(&self) -> Vec<String> {
        self.res.labels.clone()
    }

    #[getter]
    fn parities(&self) -> Vec<u8> {
        (0..self.res.dim()).map(|i| self.res.parity(i)).collect()
    }

    #[getter]
    fn blocks(&self) -> Vec<usize> {
        self.blocks.clone()
    }

    #[getter]
    fn center_dim(&self) -> usize {
        self.center_dim
    }

    #[getter]
    fn semisimple(&self) -> bool {
        self.semisimple
    }

    /// Coordinates of `b_i * b_j` as `{k: Fraction}`.
    fn multiply<'py>(&self, py: Python<'py>, i: usize, j: usize) -> PyResult<Bound<'py, PyDict>> {
        let n = self.res.dim();
        if i >= n || j >= n {
            return Err(PyValueError::new_err(format!("basis index out of range 0..{n}")));
        }
        let out = PyDict::new(py);
        let p = self.res.mul(&SparseVec::basis(i), &SparseVec::basis(j));
        for (k, c) in &p {
            out.set_item(*k, fraction(py, c)?)?;
        }
        Ok(out)
    }

    /// All nonzero `(i, j, k, c)` with `b_i * b_j = sum_k c b_k`.
    fn structure_constants<'py>(&self, py: Python<'py>) -> PyResult<Vec<Triple<'py>>> {
        self.res.structure_constants().into_iter().map(|(i, j, k, c)| Ok((i, j, k, fraction(py, &c)?))).collect()
    }

    fn __len__(&self) -> usize {
        self.res.dim()
    }

    fn __repr__(&self) -> String {
        format!(
            "ZhuAlgebra(dim={}, blocks={:?}, certified={})",
            self.res.dim(),
            self.blocks,
            if self.res.certified { "True" } else { "False" }
        )
    }
}

/// Computes `A_g(V)` for `l` fermions and twist `id`, `sigma` or `tau`.
#[pyfunction]
#[pyo3(signature = (l, twist = "sigma", max_weight = "5/2", margin = "2", certify = false, tau_table = None))]
fn zhu_algebra(
    l: usize,
    twist: &str,
    max_weight: &str,
    margin: &str,
    certify: bool,
    tau_table: Option<&str>,
) -> PyResult<ZhuAlgebra> {
    let (ctx, mods) = setup(l, twist, tau_table)?;
    let mut opts = ZhuOptions::new(weight(max_weight)?);
    opts.margin = weight(margin)?;
    let oms = if certify { Some(omegas(&mods, FracIndex::ZERO)?) } else { None };
    let sum = oms.as_ref().map(|o| DirectSum(o.iter().map(|(_, x)| x as &dyn ZeroModeRep).collect()));
    let res = build_algebra(&ctx, &opts, sum.as_ref().map(|d| d as &dyn ZeroModeRep)).map_err(err)?;
    let st = center_and_idempotents(&res);
    Ok(ZhuAlgebra { blocks: st.blocks, center_dim: st.center_dim, semisimple: st.semisimple, res })
}

/// Graded dimensions `[(weight, dim), ...]` of each canonical module; for
/// `twist="id"` the module is V.
#[pyfunction]
#[pyo3(signature = (l, twist = "id", max_weight = "2", tau_table = None))]
fn graded_dims(l: usize, twist: &str, max_weight: &str, tau_table: Option<&str>) -> PyResult<Vec<(String, Dims)>> {
    let (_, mods) = setup(l, twist, tau_table)?;
    let w = weight(max_weight)?;
    Ok(mods
        .into_iter()
        .map(|(n, m)| (n, m.graded_dims(w).into_iter().map(|(d, k)| (d.to_string(), k)).collect()))
        .collect())
}

/// `dim Omega(M)` for each canonical module, searched to `max_degree`.
#[pyfunction]
#[pyo3(signature = (l, twist = "sigma", max_degree = "1", tau_table = None))]
fn omega_dims(l: usize, twist: &str, max_degree: &str, tau_table: Option<&str>) -> PyResult<Vec<(String, usize)>> {
    let (_, mods) = setup(l, twist, tau_table)?;
    Ok(omegas(&mods, weight(max_degree)?)?.into_iter().map(|(n, o)| (n, o.dim())).collect())
}

/// Central charge of `l` free fermions, computed from the conformal vector.
#[pyfunction]
fn central_charge(py: Python<'_>, l: usize) -> PyResult<Bound<'_, PyAny>> {
    let (ctx, _) = setup(l, "id", None)?;
    let c = ctx.va().central_charge().map_err(err)?;
    fraction(py, &c)
}

/// Truncated `L(U)` for `U = Omega(M)` of each canonical module: a list of
/// `(name, simple_dims, module_dims, omega_is_seed)`.
#[pyfunction]
#[pyo3(signature = (l, twist = "sigma", max_weight = "3/2", tau_table = None))]
fn induce(
    l: usize,
    twist: &str,
    max_weight: &str,
    tau_table: Option<&str>,
) -> PyResult<Vec<(String, Dims, Dims, bool)>> {
    let (ctx, mods) = setup(l, twist, tau_table)?;
    let w = weight(max_weight)?;
    let oms = omegas(&mods, FracIndex::ZERO)?;
    let sum = DirectSum(oms.iter().map(|(_, x)| x as &dyn ZeroModeRep).collect());
    let res = build_algebra(&ctx, &ZhuOptions::new(FracIndex::new(5, 2)), Some(&sum)).map_err(err)?;
    let fmt = |d: Vec<(FracIndex, usize)>| d.into_iter().map(|(a, b)| (a.to_string(), b)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for (n, om) in &oms {
        let u = ZhuModule::from_rep(&res, om).map_err(err)?;
        let v = induce_truncated(&ctx, &res, &u, w).map_err(err)?;
        out.push((
            format!("L(Omega({n}))"),
            fmt(v.simple_dims.clone()),
            fmt(om.module().graded_dims(w)),
            v.omega_is_seed,
        ));
    }
    Ok(out)
}

/// Graded super Jacobi identity of the mode algebra, tested by action on
/// the first canonical module. Returns `(checked, failures)`.
#[pyfunction]
#[pyo3(signature = (l, twist = "sigma", limit = 100, tau_table = None))]
fn super_jacobi(l: usize, twist: &str, limit: usize, tau_table: Option<&str>) -> PyResult<(usize, usize)> {
    let (ctx, mods) = setup(l, twist, tau_table)?;
    let field = IterField::new(mods[0].1.clone());
    let ws: Vec<ModVec> = field.module().basis(FracIndex::ONE).into_iter().map(ModVec::basis).collect();
    let syms = sample_symbols(&ctx, FracIndex::ONE, FracIndex::new(3, 2));
    let r: CheckReport = check_jacobi(&ctx, &field, &syms, &ws, limit).map_err(err)?;
    Ok((r.checked, r.failures))
}

/// Adds the classes and functions to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<ZhuAlgebra>()?;
    m.add_function(wrap_pyfunction!(zhu_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(graded_dims, m)?)?;
    m.add_function(wrap_pyfunction!(omega_dims, m)?)?;
    m.add_function(wrap_pyfunction!(central_charge, m)?)?;
    m.add_function(wrap_pyfunction!(induce, m)?)?;
    m.add_function(wrap_pyfunction!(super_jacobi, m)?)?;
    Ok(())
}

#[pymodule]
fn vosa(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
