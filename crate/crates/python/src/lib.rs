use nearring_core::analysis::{
    distributive_elements, generalized_centre, is_ideal, verify_lemma_suite, zero_multipliers, IdealStatus, LemmaStatus,
};
use nearring_core::catalog::group_by_name;
use nearring_core::design::{block_design, export_design, Balance};
use nearring_core::document::NearringDocument;
use nearring_core::enumeration::{
    build_manifest, enumerate_planar_nearrings, fingerprint, nearrings_isomorphic, zp2_family, Filter,
};
use nearring_core::examples::ferrero_nearring;
use nearring_core::ferrero::{is_planar, right_identities, PlanarNearring as CoreNearring, EXHAUSTIVE_PLANARITY_LIMIT};
use nearring_core::group::Automorphism;
use nearring_core::nearfield::{kern, nearfield_by_name, Nearfield as CoreNearfield};
use nearring_core::nearvector::{
    derived_planar_nearring, make_nearvector_space, quasi_kernel, regular_decomposition, NearvectorSpace as CoreSpace,
    TwistSpec,
};
use nearring_core::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(nearring, TheoremViolation, PyException);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::TheoremViolation(m) => TheoremViolation::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn check_element(n: usize, xs: &[usize]) -> PyResult<()> {
    match xs.iter().find(|&&x| x >= n) {
        Some(x) => Err(PyValueError::new_err(format!("element {x} out of range for order {n}"))),
        None => Ok(()),
    }
}

/// A finite nearfield on `0..order`, with `0` and `1` as the identities.
#[pyclass(name = "Nearfield", module = "nearring", frozen, from_py_object)]
#[derive(Clone)]
struct Nearfield {
    inner: CoreNearfield,
}

#[pymethods]
impl Nearfield {
    /// `spec` is a prime power order or `"dickson9"`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        nearfield_by_name(spec).map(|inner| Nearfield { inner }).map_err(py_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn add(&self, a: usize, b: usize) -> PyResult<usize> {
        check_element(self.inner.order(), &[a, b])?;
        Ok(self.inner.add(a, b))
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        check_element(self.inner.order(), &[a, b])?;
        Ok(self.inner.mul(a, b))
    }

    fn is_field(&self) -> bool {
        self.inner.is_field()
    }

    fn kern(&self) -> Vec<usize> {
        kern(&self.inner).members
    }

    fn __repr__(&self) -> String {
        format!("Nearfield({:?}, order={})", self.inner.name(), self.inner.order())
    }
}

/// A finite planar nearring given by addition and multiplication tables.
#[pyclass(name = "Nearring", module = "nearring", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Nearring {
    inner: CoreNearring,
}

impl From<CoreNearring> for Nearring {
    fn from(inner: CoreNearring) -> Self {
        Nearring { inner }
    }
}

#[pymethods]
impl Nearring {
    /// Builds the nearring from a catalog group, generators of `Phi`
    /// (`"neg"`, `"id"`, `"mul:K"` or `"perm:A,B,..."`), orbit
    /// representatives and the zero-multiplier representatives.
    #[staticmethod]
    #[pyo3(signature = (group, phi, reps, zero=Vec::new()))]
    fn ferrero(group: &str, phi: Vec<String>, reps: Vec<usize>, zero: Vec<usize>) -> PyResult<Self> {
        let group = group_by_name(group).map_err(py_err)?;
        let gens = phi.iter().map(|s| Automorphism::from_spec(&group, s)).collect::<Result<Vec<_>, _>>().map_err(py_err)?;
        ferrero_nearring(group, &gens, &reps, &zero).map(Into::into).map_err(py_err)
    }

    #[staticmethod]
    fn zp2(p: usize) -> PyResult<Self> {
        zp2_family(p).map(Into::into).map_err(py_err)
    }

    #[staticmethod]
    fn from_nearfield(field: &Nearfield) -> Self {
        CoreNearring::from_nearfield(&field.inner).into()
    }

    #[staticmethod]
    fn from_document(text: &str) -> PyResult<Self> {
        NearringDocument::parse(text).and_then(|d| d.to_nearring()).map(Into::into).map_err(py_err)
    }

    fn to_document(&self) -> String {
        NearringDocument::from_nearring(&self.inner).to_text()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn add(&self, a: usize, b: usize) -> PyResult<usize> {
        check_element(self.inner.order(), &[a, b])?;
        Ok(self.inner.add(a, b))
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        check_element(self.inner.order(), &[a, b])?;
        Ok(self.inner.mul(a, b))
    }

    fn add_table(&self) -> Vec<Vec<usize>> {
        self.inner.group().rows()
    }

    fn mul_table(&self) -> Vec<Vec<usize>> {
        self.inner.mul_rows()
    }

    fn phi_order(&self) -> Option<usize> {
        self.inner.phi().map(|p| p.order())
    }

    fn is_planar(&self) -> PyResult<bool> {
        let n = &self.inner;
        is_planar(n, n.order() <= EXHAUSTIVE_PLANARITY_LIMIT).map(|p| p.is_planar()).map_err(py_err)
    }

    fn distributive_elements(&self) -> Vec<usize> {
        distributive_elements(&self.inner).members
    }

    fn zero_multipliers(&self) -> Vec<usize> {
        zero_multipliers(&self.inner).members
    }

    fn right_identities(&self) -> Vec<usize> {
        right_identities(&self.inner)
    }

    /// One of `two-sided`, `right-only`, `left-only`, `neither`,
    /// `not-normal` or `not-subgroup`.
    fn ideal_status(&self, members: Vec<usize>) -> PyResult<&'static str> {
        check_element(self.inner.order(), &members)?;
        Ok(match is_ideal(&self.inner, &members) {
            IdealStatus::TwoSided => "two-sided",
            IdealStatus::RightOnly { .. } => "right-only",
            IdealStatus::LeftOnly { .. } => "left-only",
            IdealStatus::Neither { .. } => "neither",
            IdealStatus::NotNormal { .. } => "not-normal",
            IdealStatus::NotSubgroup { .. } => "not-subgroup",
        })
    }

    /// `(members, case)` with `case` in `1..=4`.
    fn generalized_centre(&self) -> PyResult<(Vec<usize>, u8)> {
        let r = generalized_centre(&self.inner).map_err(py_err)?;
        let case = r.case_tag();
        Ok((r.gc, case))
    }

    /// `[(label, status, detail)]` with status `pass`, `fail` or `n/a`.
    fn verify_lemmas(&self) -> PyResult<Vec<(String, String, String)>> {
        let report = verify_lemma_suite(&self.inner).map_err(py_err)?;
        Ok(report
            .items
            .into_iter()
            .map(|item| {
                let (status, detail) = match item.status {
                    LemmaStatus::Pass { detail } => ("pass", detail),
                    LemmaStatus::Fail { witness } => ("fail", witness),
                    LemmaStatus::NotApplicable { reason } => ("n/a", reason),
                };
                (item.id.label().to_string(), status.to_string(), detail)
            })
            .collect())
    }

    fn block_design<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = block_design(&self.inner).map_err(py_err)?;
        let out = PyDict::new(py);
        out.set_item("v", d.v())?;
        out.set_item("b", d.b())?;
        out.set_item("k", d.block_size)?;
        out.set_item("r", d.replication)?;
        out.set_item("lambda", d.lambda())?;
        out.set_item("balanced", matches!(d.balance, Balance::Balanced { .. }))?;
        out.set_item("blocks", d.blocks.clone())?;
        out.set_item("text", export_design(&d))?;
        Ok(out)
    }

    fn fingerprint(&self) -> String {
        fingerprint(&self.inner).digest()
    }

    /// An additive isomorphism onto `other` that respects multiplication.
    fn isomorphism(&self, other: &Nearring) -> Option<Vec<usize>> {
        nearrings_isomorphic(&self.inner, &other.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Nearring({:?}, order={})", self.inner.name(), self.inner.order())
    }
}

#[derive(FromPyObject)]
enum FieldArg {
    Field(Nearfield),
    Spec(String),
}

#[derive(FromPyObject)]
enum TwistArg {
    List(Vec<String>),
    Spec(String),
}

/// `F^n` with coordinate `i` scaled through the twist `psi_i`.
#[pyclass(name = "NearvectorSpace", module = "nearring", frozen)]
struct NearvectorSpace {
    inner: CoreSpace,
}

#[pymethods]
impl NearvectorSpace {
    /// Twists are `"id"`, `"pow:K"` or `"map:A,B,..."`, given as a list or
    /// one comma-separated string.
    #[new]
    fn new(field: FieldArg, twists: TwistArg) -> PyResult<Self> {
        let field = match field {
            FieldArg::Field(f) => f.inner,
            FieldArg::Spec(s) => nearfield_by_name(&s).map_err(py_err)?,
        };
        let twists = match twists {
            TwistArg::List(v) => v.iter().map(|t| t.parse()).collect::<Result<Vec<TwistSpec>, _>>(),
            TwistArg::Spec(s) => TwistSpec::parse_list(&s),
        }
        .map_err(py_err)?;
        make_nearvector_space(&field, &twists).map(|inner| NearvectorSpace { inner }).map_err(py_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn coordinates(&self, v: usize) -> PyResult<Vec<usize>> {
        check_element(self.inner.order(), &[v])?;
        Ok(self.inner.coordinates(v))
    }

    fn vector(&self, coordinates: Vec<usize>) -> PyResult<usize> {
        if coordinates.len() != self.inner.dimension() {
            return Err(PyValueError::new_err(format!("expected {} coordinates", self.inner.dimension())));
        }
        check_element(self.inner.field().order(), &coordinates)?;
        Ok(self.inner.vector(&coordinates))
    }

    fn scalar(&self, v: usize, alpha: usize) -> PyResult<usize> {
        check_element(self.inner.order(), &[v])?;
        check_element(self.inner.field().order(), &[alpha])?;
        Ok(self.inner.scalar(v, alpha))
    }

    fn quasi_kernel(&self) -> Vec<usize> {
        quasi_kernel(&self.inner).members
    }

    /// Blocks of 0-based component indices.
    fn regular_decomposition(&self) -> Vec<Vec<usize>> {
        regular_decomposition(&self.inner).parts
    }

    /// Nearring on `V` from projection onto a 0-based coordinate.
    #[pyo3(signature = (coordinate=0, zero=None))]
    fn derived_nearring(&self, coordinate: usize, zero: Option<Vec<usize>>) -> PyResult<Nearring> {
        derived_planar_nearring(&self.inner, coordinate, zero.as_deref()).map(Into::into).map_err(py_err)
    }
}

fn parse_filter(filter: &str) -> PyResult<Filter> {
    filter.parse().map_err(py_err)
}

/// Canonical representatives of the isomorphism classes up to `max_order`.
#[pyfunction]
#[pyo3(signature = (max_order, filter="all"))]
fn enumerate(py: Python<'_>, max_order: usize, filter: &str) -> PyResult<Vec<Nearring>> {
    let filter = parse_filter(filter)?;
    let classes = py.detach(|| enumerate_planar_nearrings(max_order, filter)).map_err(py_err)?;
    Ok(classes.into_iter().map(|c| c.canonical.into()).collect())
}

#[pyfunction]
#[pyo3(signature = (max_order, filter="all", tables=false))]
fn manifest_json(py: Python<'_>, max_order: usize, filter: &str, tables: bool) -> PyResult<String> {
    let filter = parse_filter(filter)?;
    py.detach(|| {
        let classes = enumerate_planar_nearrings(max_order, filter)?;
        build_manifest(&classes, max_order, filter, tables).map(|m| m.to_json())
    })
    .map_err(py_err)
}

#[pymodule]
fn nearring(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Nearfield>()?;
    m.add_class::<Nearring>()?;
    m.add_class::<NearvectorSpace>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(manifest_json, m)?)?;
    m.add("TheoremViolation", m.py().get_type::<TheoremViolation>())?;
    Ok(())
}
