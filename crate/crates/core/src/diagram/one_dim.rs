//! Diagrams on the real line `{-} < {0} > {+}`: cohomology, monodromy and
//! the `(Phi, Psi)` description.

use std::collections::BTreeMap;

use super::{DiagramError, HyperbolicDiagram};
use crate::arrangement::Arrangement;
use crate::linalg::RationalMatrix;

/// Face indices of the line poset, sorted as `-`, `0`, `+`.
const MINUS: usize = 0;
const ZERO: usize = 1;
const PLUS: usize = 2;

pub(crate) fn check_line(d: &HyperbolicDiagram) -> Result<(), DiagramError> {
    let a = d.arrangement();
    if a.dim() == 1 && a.len() == 1 {
        Ok(())
    } else {
        Err(DiagramError::WrongArrangement)
    }
}

/// The four maps of a line diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineMaps {
    /// `E_0 -> E_-`
    pub gamma_minus: RationalMatrix,
    /// `E_- -> E_0`
    pub delta_minus: RationalMatrix,
    /// `E_0 -> E_+`
    pub gamma_plus: RationalMatrix,
    /// `E_+ -> E_0`
    pub delta_plus: RationalMatrix,
}

impl LineMaps {
    pub fn of(d: &HyperbolicDiagram) -> Result<Self, DiagramError> {
        check_line(d)?;
        Ok(LineMaps {
            gamma_minus: d.gamma(ZERO, MINUS).expect("0 <= -"),
            delta_minus: d.delta(ZERO, MINUS).expect("0 <= -"),
            gamma_plus: d.gamma(ZERO, PLUS).expect("0 <= +"),
            delta_plus: d.delta(ZERO, PLUS).expect("0 <= +"),
        })
    }
}

impl HyperbolicDiagram {
    /// A diagram on the real line; the stalk dimensions are read off the
    /// matrix shapes.
    pub fn on_line(maps: LineMaps) -> Result<Self, DiagramError> {
        let e0 = maps.gamma_minus.cols();
        let dims = vec![maps.gamma_minus.rows(), e0, maps.gamma_plus.rows()];
        let mut gamma = BTreeMap::new();
        let mut delta = BTreeMap::new();
        gamma.insert((ZERO, MINUS), maps.gamma_minus);
        delta.insert((ZERO, MINUS), maps.delta_minus);
        gamma.insert((ZERO, PLUS), maps.gamma_plus);
        delta.insert((ZERO, PLUS), maps.delta_plus);
        HyperbolicDiagram::from_covers(Arrangement::line().enumerate_faces(), dims, gamma, delta)
    }

    /// `T = (gamma_+ delta_-)(gamma_- delta_+) : E_+ -> E_+`.
    pub fn monodromy_1d(&self) -> Result<RationalMatrix, DiagramError> {
        let m = LineMaps::of(self)?;
        let plus_from_minus = m.gamma_plus.compose(&m.delta_minus)?;
        let minus_from_plus = m.gamma_minus.compose(&m.delta_plus)?;
        Ok(plus_from_minus.compose(&minus_from_plus)?)
    }

    /// Dimensions of the cohomology of the complexes
    /// `E_- + E_+ -> E_0` (degrees 0, 1) and `E_0 -> E_- + E_+` (degrees 1, 2).
    pub fn cohomology_1d(&self) -> Result<Cohomology1d, DiagramError> {
        let m = LineMaps::of(self)?;
        let e0 = self.dim(ZERO);
        let ends = self.dim(MINUS) + self.dim(PLUS);
        let r_delta = m.delta_minus.hstack(&m.delta_plus)?.rank();
        let r_gamma = m.gamma_minus.vstack(&m.gamma_plus)?.rank();
        Ok(Cohomology1d {
            h0: ends - r_delta,
            h1: e0 - r_delta,
            h1c: e0 - r_gamma,
            h2c: ends - r_gamma,
        })
    }

    /// `Phi = Ker(gamma_-)`, `Psi = E_+`, `v = gamma_+` on `Phi`, and
    /// `u = delta_+ - delta_- gamma_- delta_+` written in the kernel basis.
    pub fn to_phi_psi(&self) -> Result<PhiPsiDatum, DiagramError> {
        check_line(self)?;
        let report = self.validate();
        if !report.passed() {
            return Err(DiagramError::NotPerverse(report.violations.len()));
        }
        let m = LineMaps::of(self)?;
        let embedding = m.gamma_minus.kernel();
        let projected = m
            .delta_plus
            .sub(&m.delta_minus.compose(&m.gamma_minus)?.compose(&m.delta_plus)?)?;
        if !m.gamma_minus.compose(&projected)?.is_zero() {
            return Err(DiagramError::InternalCheck("gamma_- u != 0".into()));
        }
        let u = embedding.solve(&projected)?;
        let v = m.gamma_plus.compose(&embedding)?;
        let datum = PhiPsiDatum {
            u,
            v,
            phi_embedding: embedding,
        };
        if datum.t_psi() != self.monodromy_1d()? {
            return Err(DiagramError::InternalCheck("Id - vu differs from the monodromy".into()));
        }
        if !datum.is_nondegenerate() {
            return Err(DiagramError::NotInvertible);
        }
        Ok(datum)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cohomology1d {
    pub h0: usize,
    pub h1: usize,
    pub h1c: usize,
    pub h2c: usize,
}

impl Cohomology1d {
    pub fn as_tuple(self) -> (usize, usize, usize, usize) {
        (self.h0, self.h1, self.h1c, self.h2c)
    }
}

/// Linear algebra data `u : Psi -> Phi`, `v : Phi -> Psi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiPsiDatum {
    /// `dim Phi x dim Psi`
    pub u: RationalMatrix,
    /// `dim Psi x dim Phi`
    pub v: RationalMatrix,
    /// Columns are the chosen basis of `Phi` inside `E_0`.
    pub phi_embedding: RationalMatrix,
}

impl PhiPsiDatum {
    /// A datum not coming from a diagram; the embedding is the identity of
    /// `Phi`.
    pub fn new(u: RationalMatrix, v: RationalMatrix) -> Result<Self, DiagramError> {
        if u.shape() != (v.cols(), v.rows()) {
            return Err(DiagramError::Linalg(crate::linalg::LinalgError::ShapeMismatch {
                op: "phi-psi",
                left: u.shape(),
                right: v.shape(),
            }));
        }
        let datum = PhiPsiDatum {
            phi_embedding: RationalMatrix::identity(u.rows()),
            u,
            v,
        };
        if !datum.is_nondegenerate() {
            return Err(DiagramError::NotInvertible);
        }
        Ok(datum)
    }

    pub fn dim_phi(&self) -> usize {
        self.u.rows()
    }

    pub fn dim_psi(&self) -> usize {
        self.u.cols()
    }

    /// `Id - uv` on `Phi`.
    pub fn t_phi(&self) -> RationalMatrix {
        let uv = self.u.compose(&self.v).expect("shapes checked");
        RationalMatrix::identity(self.dim_phi()).sub(&uv).expect("square")
    }

    /// `Id - vu` on `Psi`.
    pub fn t_psi(&self) -> RationalMatrix {
        let vu = self.v.compose(&self.u).expect("shapes checked");
        RationalMatrix::identity(self.dim_psi()).sub(&vu).expect("square")
    }

    fn is_nondegenerate(&self) -> bool {
        self.t_phi().inverse().is_ok() && self.t_psi().inverse().is_ok()
    }

    /// Multiplicities of the four indecomposables with trivial monodromy.
    pub fn decompose(&self) -> Result<Decomposition, DiagramError> {
        let uv = self.u.compose(&self.v)?;
        let vu = self.v.compose(&self.u)?;
        if !uv.is_zero() || !vu.is_zero() {
            return Err(DiagramError::NontrivialMonodromy);
        }
        let ru = self.u.rank();
        let rv = self.v.rank();
        Ok(Decomposition {
            skyscraper: self.dim_phi() - ru - rv,
            constant: self.dim_psi() - ru - rv,
            direct_image: rv,
            extension_by_zero: ru,
        })
    }
}

/// Multiplicities in `Q_0^a + Q_C^b + (Rj_* Q)^c + (j_! Q)^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub skyscraper: usize,
    pub constant: usize,
    /// `Rj_*` of the constant sheaf on the punctured line.
    pub direct_image: usize,
    /// `j_!` of the constant sheaf on the punctured line.
    pub extension_by_zero: usize,
}

impl Decomposition {
    pub fn as_tuple(self) -> (usize, usize, usize, usize) {
        (self.skyscraper, self.constant, self.direct_image, self.extension_by_zero)
    }

    /// The canonical datum with these multiplicities.
    pub fn datum(self) -> PhiPsiDatum {
        let block = |m: RationalMatrix, k: usize| {
            let mut out = RationalMatrix::zeros(0, 0);
            for _ in 0..k {
                out = out.direct_sum(&m);
            }
            out
        };
        let one = RationalMatrix::identity(1);
        let zero_phi = RationalMatrix::zeros(1, 0);
        let zero_psi = RationalMatrix::zeros(0, 1);
        // Summand order: skyscraper, constant, Rj_*, j_!.
        let u = block(zero_phi.clone(), self.skyscraper)
            .direct_sum(&block(zero_psi.clone(), self.constant))
            .direct_sum(&block(RationalMatrix::zeros(1, 1), self.direct_image))
            .direct_sum(&block(one.clone(), self.extension_by_zero));
        let v = block(zero_psi, self.skyscraper)
            .direct_sum(&block(zero_phi, self.constant))
            .direct_sum(&block(one, self.direct_image))
            .direct_sum(&block(RationalMatrix::zeros(1, 1), self.extension_by_zero));
        PhiPsiDatum::new(u, v).expect("uv = vu = 0")
    }
}
