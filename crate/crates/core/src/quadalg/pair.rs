//! Point varieties as unions of components, and geometric pairs `(E, σ)`.

use crate::catalog::AlgebraType;
use crate::curve::HesseCurve;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::linalg::{general_quadruple, ProjMap, ProjPoint};
use crate::poly::Poly;
use crate::quadalg::maps::{same_rational_map, MapWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Plane,
    Line,
    Conic,
    Cubic,
}

impl ComponentKind {
    pub fn name(self) -> &'static str {
        match self {
            ComponentKind::Plane => "plane",
            ComponentKind::Line => "line",
            ComponentKind::Conic => "conic",
            ComponentKind::Cubic => "cubic",
        }
    }
}

/// How points of a component are produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parametrization {
    /// Polynomials in (s, t), or in (x, y, z) for the whole plane.
    Rational([Poly; 3]),
    /// Exact points on a smooth cubic, generated by chords.
    Samples(Vec<ProjPoint>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Defining form; zero for the whole plane.
    pub form: Poly,
    pub param: Parametrization,
    pub curve: Option<HesseCurve>,
}

/// Parameter values used to turn a rational parametrization into points.
const BINARY_PARAMS: [[i64; 2]; 12] = [
    [1, 0],
    [0, 1],
    [1, 1],
    [1, -1],
    [1, 2],
    [2, 1],
    [1, 3],
    [3, 1],
    [2, 3],
    [1, -2],
    [3, -1],
    [2, 5],
];

const PLANE_PARAMS: [[i64; 3]; 8] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 1],
    [1, 2, 3],
    [2, -1, 1],
    [1, 3, -2],
    [3, 1, 2],
];

impl Component {
    pub fn plane(tower: &FieldTower) -> Self {
        Component {
            kind: ComponentKind::Plane,
            form: Poly::zero(tower, 3),
            param: Parametrization::Rational(Poly::xyz(tower)),
            curve: None,
        }
    }

    /// A rational component; the parametrization is checked against the form.
    pub fn rational(kind: ComponentKind, form: Poly, param: [Poly; 3]) -> Result<Self> {
        if !form.substitute(&param).is_zero() {
            return Err(Error::Constraint(format!(
                "parametrization does not lie on {form}"
            )));
        }
        Ok(Component {
            kind,
            form,
            param: Parametrization::Rational(param),
            curve: None,
        })
    }

    pub fn elliptic(curve: &HesseCurve, samples: Vec<ProjPoint>) -> Self {
        Component {
            kind: ComponentKind::Cubic,
            form: curve.form(),
            param: Parametrization::Samples(samples),
            curve: Some(curve.clone()),
        }
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        match &self.param {
            Parametrization::Samples(s) => s.clone(),
            Parametrization::Rational(p) => {
                let t = p[0].tower();
                let vals: Vec<Vec<FieldElement>> = if p[0].nvars() == 3 {
                    PLANE_PARAMS.iter().map(|v| v.iter().map(|&x| t.int(x)).collect()).collect()
                } else {
                    BINARY_PARAMS.iter().map(|v| v.iter().map(|&x| t.int(x)).collect()).collect()
                };
                let mut out: Vec<ProjPoint> = Vec::new();
                for v in vals {
                    let c: [FieldElement; 3] = std::array::from_fn(|i| p[i].eval(&v));
                    if let Ok(q) = ProjPoint::new(c) {
                        if !out.contains(&q) {
                            out.push(q);
                        }
                    }
                }
                out
            }
        }
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.form.eval(p.coords()).is_zero()
    }
}

/// A point variety with an automorphism, `(E, σ)`.
#[derive(Clone, Debug)]
pub struct GeometricPair {
    pub components: Vec<Component>,
    pub sigma: MapWord,
    /// The catalog entry this pair came from, if any.
    pub origin: Option<AlgebraType>,
    tower: FieldTower,
}

/// Outcome of comparing two maps on one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCheck {
    pub component: usize,
    pub method: &'static str,
    pub ok: bool,
}

impl GeometricPair {
    pub fn new(tower: &FieldTower, components: Vec<Component>, sigma: MapWord) -> Self {
        GeometricPair {
            components,
            sigma,
            origin: None,
            tower: tower.clone(),
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// The same variety with another automorphism; drops the catalog origin.
    pub fn with_sigma(&self, sigma: MapWord) -> GeometricPair {
        GeometricPair {
            components: self.components.clone(),
            sigma,
            origin: None,
            tower: self.tower.clone(),
        }
    }

    pub fn is_plane(&self) -> bool {
        self.components.iter().any(|c| c.kind == ComponentKind::Plane)
    }

    /// Product of the component forms (zero for the plane).
    pub fn variety_form(&self) -> Poly {
        if self.is_plane() {
            return Poly::zero(&self.tower, 3);
        }
        self.components
            .iter()
            .fold(Poly::constant(self.tower.one(), 3), |acc, c| acc.mul(&c.form))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.components.iter().any(|c| c.contains(p))
    }

    pub fn sample_points(&self) -> Vec<ProjPoint> {
        let mut out: Vec<ProjPoint> = Vec::new();
        for c in &self.components {
            for p in c.points() {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Compares two maps on every component: symbolically on rational
    /// components, pointwise on every sample of a cubic.
    pub fn compare_maps(&self, f: &MapWord, g: &MapWord) -> Result<Vec<ComponentCheck>> {
        let mut out = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            let check = match &c.param {
                Parametrization::Rational(p) if f.is_symbolic() && g.is_symbolic() => {
                    let ok = match (f.apply_symbolic(p), g.apply_symbolic(p)) {
                        (Ok(a), Ok(b)) => same_rational_map(&a, &b),
                        _ => false,
                    };
                    ComponentCheck {
                        component: i,
                        method: "symbolic",
                        ok,
                    }
                }
                _ => {
                    let pts = c.points();
                    let mut ok = pts.len() >= 10;
                    for p in &pts {
                        match (f.apply_point(p), g.apply_point(p)) {
                            (Ok(a), Ok(b)) if a == b => {}
                            _ => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    ComponentCheck {
                        component: i,
                        method: "samples",
                        ok,
                    }
                }
            };
            out.push(check);
        }
        Ok(out)
    }

    pub fn maps_agree(&self, f: &MapWord, g: &MapWord) -> Result<bool> {
        Ok(self.compare_maps(f, g)?.iter().all(|c| c.ok))
    }

    /// Fits a linear map to point pairs using the first source quadruple in
    /// general position. `None` if the matching targets are degenerate.
    pub fn fit_pairs(pairs: &[(ProjPoint, ProjPoint)]) -> Result<Option<ProjMap>> {
        let src: Vec<&[FieldElement; 3]> = pairs.iter().map(|(s, _)| s.coords()).collect();
        let Some(idx) = general_quadruple(&src) else {
            return Err(Error::Sampling("no four points in general position".into()));
        };
        let quad: [(ProjPoint, ProjPoint); 4] = std::array::from_fn(|k| pairs[idx[k]].clone());
        ProjMap::fit(&quad)
    }

    /// Images of the sample points under `before` and `after`, skipping
    /// points where either is undefined.
    pub fn image_pairs(&self, before: &MapWord, after: &MapWord) -> Vec<(ProjPoint, ProjPoint)> {
        self.sample_points()
            .iter()
            .filter_map(|p| Some((before.apply_point(p).ok()?, after.apply_point(p).ok()?)))
            .collect()
    }

    /// A linear map `L` with `L ∘ before = after` on `E`, if one exists.
    pub fn linear_factor(&self, before: &MapWord, after: &MapWord) -> Result<Option<ProjMap>> {
        let pairs = self.image_pairs(before, after);
        let Some(l) = Self::fit_pairs(&pairs)? else {
            return Ok(None);
        };
        let lhs = MapWord::linear(l.clone()).compose(before)?;
        Ok(self.maps_agree(&lhs, after)?.then_some(l))
    }

    /// The linear extension of an automorphism of `E`, if it has one.
    pub fn extend(&self, f: &MapWord) -> Result<Option<ProjMap>> {
        self.linear_factor(&MapWord::identity(), f)
    }

    /// Least `k <= bound` with `σ^k = id` on `E`.
    pub fn sigma_order(&self, bound: u32) -> Result<Option<u32>> {
        let mut acc = self.sigma.clone();
        for k in 1..=bound {
            if self.maps_agree(&acc, &MapWord::identity())? {
                return Ok(Some(k));
            }
            acc = acc.compose(&self.sigma)?;
        }
        Ok(None)
    }

    /// For each component, the index of the component a linear map sends it
    /// onto, or `None` if some component is not mapped into `E`.
    pub fn component_permutation(&self, tau: &ProjMap) -> Option<Vec<usize>> {
        if self.is_plane() {
            return Some(vec![0]);
        }
        let [x, y, z] = Poly::xyz(&self.tower);
        let m = &tau.matrix().m;
        let img: [Poly; 3] = std::array::from_fn(|i| {
            x.scale(&m[i][0]).add(&y.scale(&m[i][1])).add(&z.scale(&m[i][2]))
        });
        let mut perm = Vec::new();
        for c in &self.components {
            let target = self
                .components
                .iter()
                .position(|d| d.form.substitute(&img).proportional(&c.form))?;
            perm.push(target);
        }
        Some(perm)
    }
}
