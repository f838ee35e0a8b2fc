//! JSON report views. Exact quantities are strings; floats only appear in
//! fields ending in `_approx` (and the certificate's `pf_estimate`).

use bacfi::algebra::sl2::Mat2;
use bacfi::algebra::sturm::EnclosureView;
use bacfi::algebra::{
    classify_roots, exclusion_verdict, Certainty, ExclusionVerdict, IntPolynomial,
    RootClassification,
};
use bacfi::divide::{divide_to_orbifold, Divide, FaceColor};
use bacfi::homology::{H1Matrix, OrientationBranch, TorusWord};
use bacfi::linalg::IntMatrix;
use bacfi::surface::{BacfiSurface, CylinderKind};
use bacfi::traintrack::{ConeCertificate, TrackColor};
use serde::Serialize;

pub const SCHEMA: &str = "bacfi-report/1";

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn matrix_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| strings(r)).collect()
}

fn mat2_strings(m: &Mat2) -> Vec<Vec<String>> {
    m.iter().map(|r| strings(r)).collect()
}

#[derive(Serialize)]
pub struct CylinderView {
    pub squares: Vec<usize>,
    pub width: String,
    pub exponent: String,
}

#[derive(Serialize)]
pub struct SurfaceSummary {
    pub squares: String,
    pub genus: String,
    pub genus_from_divide: String,
    pub vertex_classes: String,
    pub u_turns: String,
    pub horizontal_cylinders: Vec<CylinderView>,
    pub vertical_cylinders: Vec<CylinderView>,
}

impl SurfaceSummary {
    pub fn new(s: &BacfiSurface) -> Self {
        let cyl = |kind| {
            s.cylinders(kind)
                .into_iter()
                .map(|c| CylinderView {
                    width: c.width().to_string(),
                    exponent: c.exponent.to_string(),
                    squares: c.squares,
                })
                .collect()
        };
        SurfaceSummary {
            squares: s.len().to_string(),
            genus: s.genus_from_euler().to_string(),
            genus_from_divide: Divide::from_surface(s).stats().genus_formula.to_string(),
            vertex_classes: s.vertex_classes().len().to_string(),
            u_turns: s.ne_fixed_points().len().to_string(),
            horizontal_cylinders: cyl(CylinderKind::Horizontal),
            vertical_cylinders: cyl(CylinderKind::Vertical),
        }
    }
}

#[derive(Serialize)]
pub struct H1View {
    pub dimension: String,
    pub matrix: Vec<Vec<String>>,
    pub trace: String,
    pub determinant: Option<String>,
}

impl H1View {
    pub fn new(h: &H1Matrix) -> Self {
        let m = &h.matrix;
        let determinant = if h.dimension() == 0 {
            Some("1".to_string())
        } else {
            m.determinant().ok().map(|d| d.to_string())
        };
        H1View {
            dimension: h.dimension().to_string(),
            matrix: matrix_strings(m),
            trace: m.trace().to_string(),
            determinant,
        }
    }
}

#[derive(Serialize)]
pub struct PolynomialView {
    /// Lowest degree first.
    pub coefficients: Vec<String>,
    pub text: String,
    pub degree: String,
    pub reciprocal: bool,
    pub square_free: bool,
}

impl PolynomialView {
    pub fn new(p: &IntPolynomial) -> Self {
        PolynomialView {
            coefficients: strings(p.coeffs()),
            text: p.to_string(),
            degree: p.degree().unwrap_or(0).to_string(),
            reciprocal: p.is_reciprocal(),
            square_free: p.is_square_free(),
        }
    }
}

#[derive(Serialize)]
pub struct ClassificationView {
    pub degree: String,
    pub real: String,
    pub unit_circle: String,
    pub other: String,
    pub irreducible_mod_p: Option<String>,
}

impl From<&RootClassification> for ClassificationView {
    fn from(c: &RootClassification) -> Self {
        ClassificationView {
            degree: c.degree.to_string(),
            real: c.real_count.to_string(),
            unit_circle: c.unit_circle_count.to_string(),
            other: c.other_count.to_string(),
            irreducible_mod_p: c.irreducible_mod_p_certificate.map(|p| p.to_string()),
        }
    }
}

#[derive(Serialize)]
pub struct ExclusionView {
    pub no_power_thurston: bool,
    pub no_power_penner: bool,
    /// "certified" (irreducible modulo `prime`) or "conditional_on_irreducibility".
    pub certainty: &'static str,
    pub prime: Option<String>,
}

impl From<&ExclusionVerdict> for ExclusionView {
    fn from(v: &ExclusionVerdict) -> Self {
        let (certainty, prime) = match v.certainty {
            Certainty::Certified { prime } => ("certified", Some(prime.to_string())),
            Certainty::ConditionalOnIrreducibility => ("conditional_on_irreducibility", None),
        };
        ExclusionView {
            no_power_thurston: v.no_power_thurston,
            no_power_penner: v.no_power_penner,
            certainty,
            prime,
        }
    }
}

/// Root data of a polynomial. When the input has repeated factors, every
/// field below refers to its square-free part.
#[derive(Serialize)]
pub struct SpectralView {
    pub analysed: String,
    pub largest_real_root: Option<EnclosureView>,
    pub classification: Option<ClassificationView>,
    pub exclusion: Option<ExclusionView>,
    pub notes: Vec<String>,
}

impl SpectralView {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut notes = Vec::new();
        let q = p.square_free_part();
        if q != p.primitive_part() {
            notes.push("repeated factors removed before classification".to_string());
        }
        if q.degree().unwrap_or(0) == 0 {
            notes.push("constant polynomial: no roots".to_string());
            return SpectralView {
                analysed: q.to_string(),
                largest_real_root: None,
                classification: None,
                exclusion: None,
                notes,
            };
        }
        let c = classify_roots(&q).ok();
        let exclusion = match exclusion_verdict(&q) {
            Ok(v) => Some(ExclusionView::from(&v)),
            Err(e) => {
                notes.push(format!("no exclusion verdict: {e}"));
                None
            }
        };
        SpectralView {
            analysed: q.to_string(),
            largest_real_root: c
                .as_ref()
                .and_then(|c| c.largest_real_root.as_ref())
                .map(EnclosureView::from),
            classification: c.as_ref().map(ClassificationView::from),
            exclusion,
            notes,
        }
    }
}

#[derive(Serialize)]
pub struct TorusWordView {
    pub matrix: Vec<Vec<String>>,
    pub trace: String,
    pub word: String,
    pub mirror_word: String,
    pub branch: OrientationBranch,
    /// `P` with `word = P M P^-1`.
    pub conjugator: Vec<Vec<String>>,
}

impl From<&TorusWord> for TorusWordView {
    fn from(t: &TorusWord) -> Self {
        let mirror: String = t.word.mirrored().iter().map(|l| format!("{l:?}")).collect();
        TorusWordView {
            matrix: mat2_strings(&t.matrix),
            trace: (t.matrix[0][0] + t.matrix[1][1]).to_string(),
            word: t.word.to_string(),
            mirror_word: mirror,
            branch: t.branch,
            conjugator: mat2_strings(&t.word.conjugator),
        }
    }
}

#[derive(Serialize)]
pub struct FaceView {
    pub color: FaceColor,
    pub size: String,
    pub cone_order: String,
}

#[derive(Serialize)]
pub struct OrbifoldView {
    pub genus: String,
    pub cone_points: Vec<String>,
    pub euler_char: String,
    pub euler_orb: String,
    pub euler_orb_approx: f64,
    pub hyperbolic: bool,
    pub faces: Vec<FaceView>,
    pub warnings: Vec<String>,
}

impl OrbifoldView {
    pub fn new(s: &BacfiSurface) -> Self {
        let o = divide_to_orbifold(s);
        OrbifoldView {
            genus: o.genus.to_string(),
            cone_points: strings(&o.cone_points),
            euler_char: o.euler_char.to_string(),
            euler_orb: o.euler_orb.to_string(),
            euler_orb_approx: *o.euler_orb.numer() as f64 / *o.euler_orb.denom() as f64,
            hyperbolic: o.hyperbolic,
            faces: o
                .face_profile
                .iter()
                .map(|f| FaceView {
                    color: f.color,
                    size: f.size.to_string(),
                    cone_order: f.cone_order.to_string(),
                })
                .collect(),
            warnings: o.warnings,
        }
    }
}

#[derive(Serialize)]
pub struct WidthsView {
    pub horizontal: Vec<String>,
    pub vertical: Vec<String>,
}

#[derive(Serialize)]
pub struct CertificateView {
    pub applicable: bool,
    pub reasons: Vec<String>,
    pub widths: WidthsView,
    pub type_matrix: Vec<Vec<String>>,
    pub composite: Vec<Vec<String>>,
    pub convention: &'static str,
    pub ratios: Vec<String>,
    pub min_ratio: String,
    pub min_type: TrackColor,
    /// Power iteration on the composite; an estimate, not a bound.
    pub pf_estimate: f64,
    pub verdict: Option<String>,
}

impl From<&ConeCertificate> for CertificateView {
    fn from(c: &ConeCertificate) -> Self {
        let rows = |m: &[[i64; 3]; 3]| m.iter().map(|r| strings(r)).collect();
        CertificateView {
            applicable: c.applicable,
            reasons: c.reasons.clone(),
            widths: WidthsView {
                horizontal: strings(&c.widths.horizontal),
                vertical: strings(&c.widths.vertical),
            },
            type_matrix: rows(&c.type_matrix),
            composite: rows(&c.composite),
            convention: "types ordered (red, green, blue); entry (i, j) counts type i edges \
                         in the image of a type j edge; ratio_t = (w^T composite e_t) / w_t \
                         with w = (1, 2, 1)",
            ratios: strings(&c.ratios),
            min_ratio: c.min_ratio.to_string(),
            min_type: c.min_type,
            pf_estimate: c.pf_estimate,
            verdict: c.verdict.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub schema: &'static str,
    pub kind: &'static str,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(kind: &'static str, body: T) -> Self {
        Report {
            schema: SCHEMA,
            kind,
            body,
        }
    }
}

#[derive(Serialize)]
pub struct MonodromyReport {
    pub surface: SurfaceSummary,
    pub h1: H1View,
    pub char_poly: PolynomialView,
    pub spectral: SpectralView,
    pub torus_word: Option<TorusWordView>,
    pub orbifold: OrbifoldView,
    pub certificate: CertificateView,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub polynomial: PolynomialView,
    pub spectral: SpectralView,
}

#[derive(Serialize)]
pub struct CertificateReport {
    pub certificate: CertificateView,
    /// Largest real root of the homology action, the sharper estimate.
    pub h1_largest_real_root: Option<EnclosureView>,
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub squares: String,
    pub genus: String,
}
