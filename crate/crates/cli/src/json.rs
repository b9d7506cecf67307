//! JSON interchange types. Complex entries are `[re, im]` pairs, matrices row-major.

use serde::{Deserialize, Serialize};

use qdisc_core::certify::CertificateReport;
use qdisc_core::ensembles::{ClosedForms, Povm, StateEnsemble};
use qdisc_core::linalg::{CMatrix, HermitianOperator};
use qdisc_core::solver::{BoundsReport, SolveResult};
use qdisc_core::{Error, Result, C};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix<f64>) -> Self {
        let n = m.dim();
        Self { rows: n, cols: n, data: m.as_slice().iter().map(|z| [z.re, z.im]).collect() }
    }

    pub fn from_operator(m: &HermitianOperator<f64>) -> Self {
        Self::from_matrix(m.matrix())
    }

    pub fn to_matrix(&self) -> Result<CMatrix<f64>> {
        if self.rows != self.cols {
            return Err(Error::InvalidParameter(format!("matrix must be square, got {}x{}", self.rows, self.cols)));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: self.data.len() });
        }
        CMatrix::from_vec(self.rows, self.data.iter().map(|&[re, im]| C::new(re, im)).collect())
    }

    pub fn to_operator(&self, d1: usize, d2: usize) -> Result<HermitianOperator<f64>> {
        HermitianOperator::new(d1, d2, self.to_matrix()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub prior: f64,
    pub rho: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleJson {
    pub d1: usize,
    pub d2: usize,
    #[serde(default)]
    pub separable: bool,
    pub states: Vec<StateJson>,
}

impl EnsembleJson {
    pub fn from_ensemble(e: &StateEnsemble<f64>) -> Self {
        Self {
            d1: e.d1(),
            d2: e.d2(),
            separable: e.separable_asserted(),
            states: e
                .items()
                .iter()
                .map(|(p, rho)| StateJson { prior: *p, rho: MatrixJson::from_operator(rho) })
                .collect(),
        }
    }

    pub fn to_ensemble(&self) -> Result<StateEnsemble<f64>> {
        let items = self
            .states
            .iter()
            .map(|s| Ok((s.prior, s.rho.to_operator(self.d1, self.d2)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(StateEnsemble::new(self.d1, self.d2, items)?.with_separable_asserted(self.separable))
    }
}

pub fn povm_json(m: &Povm<f64>) -> Vec<MatrixJson> {
    m.elements().iter().map(MatrixJson::from_operator).collect()
}

pub fn povm_from_json(elements: &[MatrixJson], d1: usize, d2: usize) -> Result<Povm<f64>> {
    let ops = elements.iter().map(|m| m.to_operator(d1, d2)).collect::<Result<Vec<_>>>()?;
    Povm::new(d1, d2, ops)
}

/// A POVM file: either a bare list of elements or a solve result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PovmFile {
    Elements(Vec<MatrixJson>),
    Result(ResultJson),
}

impl PovmFile {
    pub fn elements(&self) -> &[MatrixJson] {
        match self {
            PovmFile::Elements(e) => e,
            PovmFile::Result(r) => &r.povm,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultJson {
    pub problem: String,
    pub value: f64,
    pub certified_gap: f64,
    pub povm: Vec<MatrixJson>,
    #[serde(rename = "dual_K")]
    pub dual_k: MatrixJson,
}

impl ResultJson {
    pub fn from_result(r: &SolveResult<f64>) -> Self {
        Self {
            problem: r.problem_kind.as_str().to_string(),
            value: r.value,
            certified_gap: r.certified_gap,
            povm: povm_json(&r.povm),
            dual_k: MatrixJson::from_operator(&r.dual_k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormsJson {
    #[serde(rename = "p_G")]
    pub p_g: f64,
    #[serde(rename = "q_G")]
    pub q_g: f64,
    pub gap: f64,
    pub d: usize,
    pub lambda: f64,
}

impl ClosedFormsJson {
    pub fn new(cf: &ClosedForms<f64>, d: usize, lambda: f64) -> Self {
        Self { p_g: cf.p_g, q_g: cf.q_g, gap: cf.gap, d, lambda }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsJson {
    #[serde(rename = "p_G")]
    pub p_g: f64,
    #[serde(rename = "q_G")]
    pub q_g: f64,
    #[serde(rename = "p_PPT")]
    pub p_ppt: f64,
    pub ordering_ok: bool,
    pub nlwe_flag: bool,
}

impl From<&BoundsReport<f64>> for BoundsJson {
    fn from(b: &BoundsReport<f64>) -> Self {
        Self { p_g: b.p_g, q_g: b.q_g, p_ppt: b.p_ppt, ordering_ok: b.ordering_ok, nlwe_flag: b.nlwe_flag }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub lagrangian_residuals: Vec<f64>,
    pub slackness_residuals: Vec<Vec<f64>>,
    pub hermiticity_residual: f64,
    pub passed: bool,
    pub tolerance: f64,
}

impl From<&CertificateReport<f64>> for CertificateJson {
    fn from(r: &CertificateReport<f64>) -> Self {
        Self {
            kind: r.kind.as_str().to_string(),
            lagrangian_residuals: r.lagrangian_residuals.clone(),
            slackness_residuals: r.slackness_residuals.clone(),
            hermiticity_residual: r.hermiticity_residual,
            passed: r.passed,
            tolerance: r.tolerance,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdisc_core::ensembles::example_ensemble;

    #[test]
    fn ensemble_round_trip_is_exact() {
        let e = example_ensemble::<f64>(3, 0.3, None).unwrap();
        let j = EnsembleJson::from_ensemble(&e);
        let text = serde_json::to_string(&j).unwrap();
        let back: EnsembleJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_ensemble().unwrap().items(), e.items());
    }

    #[test]
    fn separable_defaults_to_false() {
        let text = r#"{"d1":1,"d2":1,"states":[{"prior":1.0,"rho":{"rows":1,"cols":1,"data":[[1.0,0.0]]}}]}"#;
        let j: EnsembleJson = serde_json::from_str(text).unwrap();
        assert!(!j.separable);
        assert_eq!(j.to_ensemble().unwrap().len(), 1);
    }

    #[test]
    fn matrix_shape_errors() {
        let bad = MatrixJson { rows: 2, cols: 2, data: vec![[1.0, 0.0]; 3] };
        assert!(bad.to_matrix().is_err());
        let rect = MatrixJson { rows: 1, cols: 2, data: vec![[1.0, 0.0]; 2] };
        assert!(rect.to_matrix().is_err());
    }

    #[test]
    fn awkward_floats_round_trip() {
        let m = MatrixJson { rows: 1, cols: 1, data: vec![[0.1 + 0.2, -1.0 / 3.0]] };
        let back: MatrixJson = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back.data[0][0].to_bits(), m.data[0][0].to_bits());
        assert_eq!(back.data[0][1].to_bits(), m.data[0][1].to_bits());
    }
}
