//! Strongly convex rational cones and complete fans: face and normal fans of
//! Fano polytopes, singularity reports for toric charts (smoothness,
//! Gorenstein index, cyclic quotient types, canonicity), dual-cone Hilbert
//! bases with binomial chart presentations, Picard rank, and nef/Cartier
//! tests for torus-invariant divisors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{
    content, int_rows_rank, int_solve, integer_kernel, irdot, primitive, rat_solve, rat_rank,
    smith_normal_form, to_rat_vec, vadd, vdot, vneg, vscale, IntMatrix,
};
use crate::poly::{toric_ideal, GrobnerError, Polynomial, StepBudget};
use crate::polytope::{
    polygon_normal_form, Halfspace, LatticePolytope, PolygonTag, RationalPolytope,
};
use crate::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanError {
    /// Generators positively span a line.
    NotStronglyConvex,
    /// A cone needs at least one nonzero generator.
    EmptyCone,
    /// The polytope is not Fano (full-dimensional, origin interior, primitive
    /// vertices).
    NotFano { reason: &'static str },
    /// The operation needs a complete fan.
    NotComplete,
    /// Maximal cones do not meet along common faces.
    NotAFan,
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::NotStronglyConvex => write!(f, "cone is not strongly convex"),
            FanError::EmptyCone => write!(f, "cone has no nonzero generators"),
            FanError::NotFano { reason } => write!(f, "polytope is not Fano: {}", reason),
            FanError::NotComplete => write!(f, "fan is not complete"),
            FanError::NotAFan => {
                write!(f, "cones do not intersect in common faces")
            }
        }
    }
}

impl core::error::Error for FanError {}

// ---------------------------------------------------------------------------
// cones

/// Strongly convex rational polyhedral cone, stored by its sorted primitive
/// extreme rays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<Vec<Int>>,
}

impl Cone {
    pub fn new(ambient_rank: usize, generators: &[Vec<Int>]) -> Result<Cone, FanError> {
        let mut rays: Vec<Vec<Int>> = generators
            .iter()
            .filter(|g| !g.iter().all(Int::is_zero))
            .map(|g| {
                assert_eq!(g.len(), ambient_rank);
                primitive(g)
            })
            .collect();
        rays.sort();
        rays.dedup();
        if rays.is_empty() {
            return Err(FanError::EmptyCone);
        }
        let hull = LatticePolytope::hull(ambient_rank, &rays);
        if hull.contains(&vec![Int::zero(); ambient_rank]) {
            return Err(FanError::NotStronglyConvex);
        }
        // drop generators interior to the cone of the others: a generator is
        // extreme iff its tight facet normals cut it out to a 1-dimensional
        // face
        let cone = Cone { ambient_rank, rays };
        let normals = cone.facet_normals();
        let extreme: Vec<Vec<Int>> = cone
            .rays
            .iter()
            .filter(|r| {
                let mut tight: Vec<Vec<Rat>> =
                    normals.iter().filter(|n| vdot(n, r).is_zero()).map(|n| to_rat_vec(n)).collect();
                tight.extend(cone.span_equations().iter().map(|e| to_rat_vec(e)));
                cone.rank() == 1 || rat_rank(&tight) == cone.ambient_rank - 1
            })
            .cloned()
            .collect();
        Ok(Cone { ambient_rank, rays: extreme })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn rank(&self) -> usize {
        int_rows_rank(&self.rays)
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.rank()
    }

    /// Primitive inner normals of the cone's facets. For a cone of less than
    /// full rank the normals are computed on its linear span and lifted, so
    /// together with `span_equations` they still cut the cone out of the
    /// ambient space.
    pub fn facet_normals(&self) -> Vec<Vec<Int>> {
        let rank = self.rank();
        if rank == 0 {
            return Vec::new();
        }
        let span = SpanCoords::of(self);
        let mut pts = span.local_rays.clone();
        pts.push(vec![Int::zero(); rank]);
        let hull = LatticePolytope::hull(rank, &pts);
        let facets = match hull.facets() {
            Ok(f) => f,
            Err(_) => return Vec::new(),
        };
        facets
            .iter()
            .filter(|h| h.rhs.is_zero())
            .map(|h| primitive(&span.lift_functional(&h.normal)))
            .collect()
    }

    /// Integral equations cutting out the linear span.
    pub fn span_equations(&self) -> Vec<Vec<Int>> {
        integer_kernel(&IntMatrix::from_rows(self.rays.clone()))
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.span_equations().iter().all(|e| vdot(e, x).is_zero())
            && self.facet_normals().iter().all(|n| !vdot(n, x).is_negative())
    }

    /// Ray-index sets of the cone's facets (its codimension-one faces).
    pub fn facet_ray_sets(&self) -> Vec<Vec<usize>> {
        if self.rank() <= 1 {
            // facet is the origin: empty ray set
            return vec![Vec::new()];
        }
        let mut sets: Vec<Vec<usize>> = self
            .facet_normals()
            .iter()
            .map(|n| {
                (0..self.rays.len()).filter(|&i| vdot(n, &self.rays[i]).is_zero()).collect()
            })
            .collect();
        sets.sort();
        sets.dedup();
        sets
    }
}

/// Saturated coordinates on the linear span of a cone.
struct SpanCoords {
    /// Rows: a basis of the saturated sublattice `span ∩ Z^n`.
    basis: Vec<Vec<Int>>,
    /// The cone's rays in basis coordinates.
    local_rays: Vec<Vec<Int>>,
}

impl SpanCoords {
    fn of(cone: &Cone) -> SpanCoords {
        if cone.rank() == cone.ambient_rank {
            let basis = IntMatrix::identity(cone.ambient_rank).row_vecs();
            return SpanCoords { basis, local_rays: cone.rays.clone() };
        }
        let equations = cone.span_equations();
        let basis = integer_kernel(&IntMatrix::from_rows(equations));
        let basis_t = IntMatrix::from_rows(basis.clone()).transpose();
        let local_rays = cone
            .rays
            .iter()
            .map(|r| int_solve(&basis_t, r).expect("saturated basis spans the cone"))
            .collect();
        SpanCoords { basis, local_rays }
    }

    /// Lifts a functional on the span lattice to an ambient integral
    /// functional (possible because the sublattice is saturated).
    fn lift_functional(&self, local: &[Int]) -> Vec<Int> {
        int_solve(&IntMatrix::from_rows(self.basis.clone()), local)
            .expect("functionals on a saturated sublattice extend")
    }
}

/// Cyclic quotient singularity data `1/order(weights...)`, canonicalized up
/// to coordinate permutation and choice of group generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientType {
    pub order: Int,
    pub weights: Vec<Int>,
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(", self.order)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", w)?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub rank: usize,
    pub simplicial: bool,
    pub smooth: bool,
    /// Smallest positive multiple of the boundary functional that is
    /// integral; `None` when the cone is not Q-Gorenstein.
    pub gorenstein_index: Option<Int>,
    /// Present for simplicial cones with a nontrivial cyclic quotient group.
    pub quotient_type: Option<QuotientType>,
    pub canonical: Option<bool>,
    pub terminal: Option<bool>,
}

pub fn cone_report(cone: &Cone) -> ConeReport {
    let rank = cone.rank();
    let simplicial = cone.is_simplicial();
    let span = SpanCoords::of(cone);
    let snf = smith_normal_form(&IntMatrix::from_rows(span.local_rays.clone()));
    let smooth = simplicial && snf.divisors.iter().all(Int::is_one);

    // support functional with value -1 on every primitive ray, in span
    // coordinates; unique because the rays span
    let rows: Vec<Vec<Rat>> = span.local_rays.iter().map(|r| to_rat_vec(r)).collect();
    let minus_ones = vec![-Rat::one(); rows.len()];
    let functional = rat_solve(&rows, &minus_ones).filter(|m| {
        rows.iter().zip(&minus_ones).all(|(r, b)| {
            r.iter().zip(m).map(|(a, x)| a * x).fold(Rat::zero(), |s, t| s + t) == *b
        })
    });
    let gorenstein_index = functional.as_ref().map(|m| {
        m.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()))
    });

    let (canonical, terminal) = match &functional {
        None => (None, None),
        Some(m) => {
            let mut pts = span.local_rays.clone();
            pts.push(vec![Int::zero(); rank]);
            let under_roof = LatticePolytope::hull(rank, &pts);
            let mut canonical = true;
            let mut terminal = true;
            for p in under_roof.lattice_points() {
                if p.iter().all(Int::is_zero) {
                    continue;
                }
                let height = -irdot(&p, m);
                if height < Rat::one() {
                    canonical = false;
                    terminal = false;
                    break;
                }
                if height == Rat::one() && !span.local_rays.contains(&p) {
                    terminal = false;
                }
            }
            (Some(canonical), Some(canonical && terminal))
        }
    };

    let quotient_type = if simplicial && !smooth {
        cyclic_quotient_type(&span)
    } else {
        None
    };

    ConeReport { rank, simplicial, smooth, gorenstein_index, quotient_type, canonical, terminal }
}

/// For a simplicial cone given in span coordinates: the quotient
/// `Z^r / (ray lattice)` when it is cyclic, with canonicalized weights.
fn cyclic_quotient_type(span: &SpanCoords) -> Option<QuotientType> {
    let r = span.local_rays.len();
    // columns are the rays
    let b = IntMatrix::from_rows(span.local_rays.clone()).transpose();
    let snf = smith_normal_form(&b);
    let nontrivial: Vec<&Int> = snf.divisors.iter().filter(|d| !d.is_one()).collect();
    if nontrivial.len() != 1 {
        return None;
    }
    let order = nontrivial[0].clone();
    // generator of the quotient: preimage under u of the last unit vector
    let mut e_last = vec![Int::zero(); r];
    e_last[r - 1] = Int::one();
    let generator = int_solve(&snf.u, &e_last).expect("u is unimodular");
    // order * generator lies in the ray lattice; its ray coordinates are the
    // weights modulo the order
    let weights_raw = int_solve(&b, &vscale(&order, &generator))
        .expect("order times the generator lies in the ray lattice");
    let reduce = |w: &Int| w.mod_floor(&order);
    // canonicalize over the choice of generator: any unit multiple
    let mut best: Option<Vec<Int>> = None;
    let mut unit = Int::one();
    while unit < order {
        if unit.gcd(&order).is_one() {
            let mut scaled: Vec<Int> =
                weights_raw.iter().map(|w| reduce(&(w * &unit))).collect();
            scaled.sort();
            if best.as_ref().is_none_or(|b| &scaled < b) {
                best = Some(scaled);
            }
        }
        unit += Int::one();
    }
    Some(QuotientType { order, weights: best.expect("a unit always exists") })
}

// ---------------------------------------------------------------------------
// dual cone Hilbert bases and chart presentations

/// Minimal generators of the dual monoid `σ∨ ∩ M`. For cones of less than
/// full rank the monoid splits off the unit subgroup `σ^⊥ ∩ M`; `generators`
/// generate the pointed part and `units` is a basis of the unit subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub generators: Vec<Vec<Int>>,
    pub units: Vec<Vec<Int>>,
}

/// Affine chart data: monoid generators (in coordinates on the span lattice,
/// one variable per generator) and the binomial relations among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPresentation {
    pub hilbert_basis: HilbertBasis,
    /// Exponent vector of each generator on the span lattice, aligned with
    /// `hilbert_basis.generators`; the monomial parametrization of the chart.
    pub generator_exponents: Vec<Vec<Int>>,
    pub relations: Vec<Polynomial>,
}

pub fn dual_cone_hilbert_basis(cone: &Cone) -> HilbertBasis {
    let (basis, _) = dual_basis_with_exponents(cone);
    basis
}

fn dual_basis_with_exponents(cone: &Cone) -> (HilbertBasis, Vec<Vec<Int>>) {
    let span = SpanCoords::of(cone);
    let r = span.local_rays.first().map_or(0, Vec::len);
    // extreme rays of the dual cone = facet normals in span coordinates
    let local_cone = Cone { ambient_rank: r, rays: span.local_rays.clone() };
    let dual_extremes: Vec<Vec<Int>> = if r == 1 {
        vec![primitive(&span.local_rays[0])]
    } else {
        local_cone.facet_normals()
    };
    // every Hilbert basis element decomposes with coefficients below one in
    // some simplicial chamber of the dual cone, so its pairing with the ray
    // sum is bounded by the total pairing of the dual extreme rays
    let ray_sum = span
        .local_rays
        .iter()
        .fold(vec![Int::zero(); r], |acc, ray| vadd(&acc, ray));
    let bound: Int = dual_extremes.iter().map(|u| vdot(u, &ray_sum)).sum();
    let mut halfspaces: Vec<Halfspace> = span
        .local_rays
        .iter()
        .map(|ray| Halfspace::new(ray.clone(), Rat::zero()))
        .collect();
    halfspaces.push(Halfspace::new(vneg(&ray_sum), Rat::from(-bound.clone())));
    let region = RationalPolytope::from_halfspaces(r, &halfspaces)
        .expect("dual fundamental region is bounded");
    let mut candidates: Vec<Vec<Int>> = region
        .lattice_points()
        .into_iter()
        .filter(|m| !m.iter().all(Int::is_zero))
        .collect();
    candidates.sort_by(|a, b| {
        vdot(a, &ray_sum).cmp(&vdot(b, &ray_sum)).then_with(|| a.cmp(b))
    });
    let in_dual = |x: &[Int]| span.local_rays.iter().all(|ray| !vdot(ray, x).is_negative());
    let mut kept: Vec<Vec<Int>> = Vec::new();
    for m in candidates {
        let reducible = kept.iter().any(|g| {
            let diff: Vec<Int> = m.iter().zip(g).map(|(a, b)| a - b).collect();
            !diff.iter().all(Int::is_zero) && in_dual(&diff)
        });
        if !reducible {
            kept.push(m);
        }
    }
    let generators: Vec<Vec<Int>> = kept.iter().map(|m| span.lift_functional(m)).collect();
    let units = integer_kernel(&IntMatrix::from_rows(cone.rays.clone()));
    (HilbertBasis { generators, units }, kept)
}

pub fn chart_presentation(
    cone: &Cone,
    budget: &mut StepBudget,
) -> Result<ChartPresentation, GrobnerError> {
    let (hilbert_basis, generator_exponents) = dual_basis_with_exponents(cone);
    let relations = toric_ideal(&generator_exponents, budget)?;
    Ok(ChartPresentation { hilbert_basis, generator_exponents, relations })
}

// ---------------------------------------------------------------------------
// fans

/// A fan presented by its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_rank: usize,
    max_cones: Vec<Cone>,
    rays: Vec<Vec<Int>>,
    wall_count: usize,
    complete: bool,
}

impl Fan {
    /// Builds a fan from maximal cones, verifying that common rays of any
    /// two cones span a face of each.
    pub fn from_max_cones(ambient_rank: usize, cones: Vec<Cone>) -> Result<Fan, FanError> {
        let mut max_cones = cones;
        max_cones.sort();
        max_cones.dedup();
        for c in &max_cones {
            if c.ambient_rank != ambient_rank {
                return Err(FanError::NotAFan);
            }
        }
        for i in 0..max_cones.len() {
            for j in i + 1..max_cones.len() {
                if !common_rays_span_a_face(&max_cones[i], &max_cones[j]) {
                    return Err(FanError::NotAFan);
                }
            }
        }
        Ok(Fan::assemble(ambient_rank, max_cones))
    }

    fn assemble(ambient_rank: usize, max_cones: Vec<Cone>) -> Fan {
        let mut rays: Vec<Vec<Int>> = max_cones.iter().flat_map(|c| c.rays.clone()).collect();
        rays.sort();
        rays.dedup();
        // walls: codimension-one faces of maximal cones; complete iff every
        // wall separates exactly two full-rank maximal cones
        let mut walls: BTreeMap<Vec<Vec<Int>>, usize> = BTreeMap::new();
        for cone in &max_cones {
            for set in cone.facet_ray_sets() {
                let key: Vec<Vec<Int>> = set.iter().map(|&i| cone.rays[i].clone()).collect();
                *walls.entry(key).or_insert(0) += 1;
            }
        }
        let full_rank = max_cones.iter().all(|c| c.rank() == ambient_rank);
        let complete = !max_cones.is_empty()
            && full_rank
            && walls.values().all(|&count| count == 2);
        Fan { ambient_rank, max_cones, rays, wall_count: walls.len(), complete }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn max_cone_count(&self) -> usize {
        self.max_cones.len()
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn wall_count(&self) -> usize {
        self.wall_count
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn ray_index(&self, ray: &[Int]) -> Option<usize> {
        self.rays.iter().position(|r| r == ray)
    }
}

/// True iff the common rays of the two cones span a face of each.
fn common_rays_span_a_face(a: &Cone, b: &Cone) -> bool {
    let common: Vec<Vec<Int>> =
        a.rays.iter().filter(|r| b.rays.contains(r)).cloned().collect();
    spans_face_of(&common, a) && spans_face_of(&common, b)
}

fn spans_face_of(subset: &[Vec<Int>], cone: &Cone) -> bool {
    if subset.is_empty() {
        return true;
    }
    // smallest face containing the subset: rays tight on every facet normal
    // that vanishes on the whole subset
    let tight_normals: Vec<Vec<Int>> = cone
        .facet_normals()
        .into_iter()
        .filter(|n| subset.iter().all(|s| vdot(n, s).is_zero()))
        .collect();
    let face_rays: Vec<&Vec<Int>> = cone
        .rays
        .iter()
        .filter(|r| tight_normals.iter().all(|n| vdot(n, r).is_zero()))
        .collect();
    if cone.rank() == cone.ray_count() && tight_normals.is_empty() && subset.len() < cone.ray_count()
    {
        return false;
    }
    face_rays.len() == subset.len() && face_rays.iter().all(|r| subset.contains(r))
}

/// The face fan of a Fano polytope: maximal cones over its facets.
pub fn face_fan(p: &LatticePolytope) -> Result<Fan, FanError> {
    if !p.is_full_dimensional() {
        return Err(FanError::NotFano { reason: "polytope is not full-dimensional" });
    }
    if !p.origin_is_interior() {
        return Err(FanError::NotFano { reason: "origin is not an interior point" });
    }
    for v in p.vertices() {
        if !content(v).is_one() {
            return Err(FanError::NotFano { reason: "vertex is not a primitive lattice point" });
        }
    }
    let facet_sets = p.facet_vertex_sets().expect("full-dimensional polytope has facets");
    let cones: Result<Vec<Cone>, FanError> = facet_sets
        .iter()
        .map(|set| {
            let rays: Vec<Vec<Int>> = set.iter().map(|&i| p.vertices()[i].clone()).collect();
            Cone::new(p.lattice_rank(), &rays)
        })
        .collect();
    Ok(Fan::assemble(p.lattice_rank(), cones?))
}

/// The normal fan of a full-dimensional polytope: at each vertex, the cone of
/// inner normals of the facets through it.
pub fn normal_fan(q: &RationalPolytope) -> Result<Fan, FanError> {
    if !q.is_full_dimensional() {
        return Err(FanError::NotFano { reason: "polytope is not full-dimensional" });
    }
    let facets = q.facets().expect("full-dimensional polytope has facets").to_vec();
    let facet_sets = q.facet_vertex_sets().expect("full-dimensional polytope has facets").to_vec();
    let mut cones = Vec::new();
    for vi in 0..q.vertices().len() {
        let normals: Vec<Vec<Int>> = facet_sets
            .iter()
            .zip(&facets)
            .filter(|(set, _)| set.contains(&vi))
            .map(|(_, h)| h.normal.clone())
            .collect();
        cones.push(Cone::new(q.lattice_rank(), &normals)?);
    }
    Ok(Fan::assemble(q.lattice_rank(), cones))
}

// ---------------------------------------------------------------------------
// Picard rank and divisors

/// Picard rank of the complete toric variety of the fan: the dimension of
/// the space of rational piecewise-linear functions modulo the globally
/// linear ones.
pub fn picard_rank(fan: &Fan) -> Result<usize, FanError> {
    if !fan.is_complete() {
        return Err(FanError::NotComplete);
    }
    let n = fan.ambient_rank();
    let k = fan.max_cone_count();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for ray in fan.max_cones[i].rays() {
                if !fan.max_cones[j].rays().contains(ray) {
                    continue;
                }
                // the two local linear functions agree on the shared ray
                let mut row = vec![Rat::zero(); n * k];
                for (c, x) in ray.iter().enumerate() {
                    row[i * n + c] = Rat::from(x.clone());
                    row[j * n + c] = -Rat::from(x.clone());
                }
                rows.push(row);
            }
        }
    }
    let pl_dimension = n * k - rat_rank(&rows);
    Ok(pl_dimension - n)
}

/// Torus-invariant divisor, by coefficients aligned with `fan.rays()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDivisor {
    pub ray_coefficients: Vec<Int>,
}

impl ToricDivisor {
    pub fn new(fan: &Fan, ray_coefficients: Vec<Int>) -> ToricDivisor {
        assert_eq!(ray_coefficients.len(), fan.ray_count());
        ToricDivisor { ray_coefficients }
    }

    /// The anticanonical divisor: coefficient one on every ray.
    pub fn anticanonical(fan: &Fan) -> ToricDivisor {
        ToricDivisor { ray_coefficients: vec![Int::one(); fan.ray_count()] }
    }
}

/// Per-cone rational linear data of the divisor's support function, or
/// `None` where no consistent choice exists.
fn support_data(fan: &Fan, divisor: &ToricDivisor, cone: &Cone) -> Option<Vec<Rat>> {
    let rows: Vec<Vec<Rat>> = cone.rays().iter().map(|r| to_rat_vec(r)).collect();
    let rhs: Vec<Rat> = cone
        .rays()
        .iter()
        .map(|r| {
            let i = fan.ray_index(r).expect("cone ray belongs to the fan");
            -Rat::from(divisor.ray_coefficients[i].clone())
        })
        .collect();
    let m = rat_solve(&rows, &rhs)?;
    // rat_solve ignores inconsistency only when solvable; re-verify
    for (row, b) in rows.iter().zip(&rhs) {
        let value = row.iter().zip(&m).map(|(a, x)| a * x).fold(Rat::zero(), |s, t| s + t);
        if value != *b {
            return None;
        }
    }
    Some(m)
}

/// Cartier iff every maximal cone admits integral linear data.
pub fn is_cartier(fan: &Fan, divisor: &ToricDivisor) -> bool {
    fan.max_cones().iter().all(|cone| {
        let rhs: Vec<Int> = cone
            .rays()
            .iter()
            .map(|r| {
                let i = fan.ray_index(r).expect("cone ray belongs to the fan");
                -divisor.ray_coefficients[i].clone()
            })
            .collect();
        let rows = IntMatrix::from_rows(cone.rays().to_vec());
        int_solve(&rows, &rhs).is_some()
    })
}

/// Nef iff the support function exists and is convex: each cone's linear
/// data satisfies every ray's inequality globally.
pub fn is_nef(fan: &Fan, divisor: &ToricDivisor) -> bool {
    for cone in fan.max_cones() {
        let Some(m) = support_data(fan, divisor, cone) else {
            return false;
        };
        for (i, ray) in fan.rays().iter().enumerate() {
            let value = irdot(ray, &m);
            let bound = -Rat::from(divisor.ray_coefficients[i].clone());
            if value < bound {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// singular locus

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumKind {
    /// Isolated non-simplicial Gorenstein cone point.
    GorensteinConePoint,
    /// Isolated cyclic quotient point.
    QuotientPoint,
    /// One-dimensional stratum of transverse quotient singularities along
    /// invariant curves.
    QuotientCurves,
}

impl StratumKind {
    pub fn label(&self) -> &'static str {
        match self {
            StratumKind::GorensteinConePoint => "isolated_gorenstein_cone",
            StratumKind::QuotientPoint => "isolated_quotient",
            StratumKind::QuotientCurves => "transverse_A1_curve_cycle",
        }
    }
}

/// Where a singular stratum lives in the polytope's combinatorics.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StratumSource {
    Facet { vertex_indices: Vec<usize> },
    Edge { vertex_indices: [usize; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularComponent {
    pub kind: StratumKind,
    pub catalog_key: String,
    pub sources: Vec<StratumSource>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocusReport {
    pub components: Vec<SingularComponent>,
}

impl SingularLocusReport {
    pub fn is_smooth(&self) -> bool {
        self.components.is_empty()
    }
}

/// Connected components of the singular locus of the face-fan toric variety
/// of a Fano 3-polytope, classified by their minimal singular cones.
pub fn singular_locus_report(p: &LatticePolytope) -> Result<SingularLocusReport, FanError> {
    face_fan(p)?; // validates the Fano conditions
    let vertices = p.vertices().to_vec();
    let rank = p.lattice_rank();
    let facet_sets: Vec<Vec<usize>> =
        p.facet_vertex_sets().expect("full-dimensional").to_vec();
    let edges: Vec<Vec<usize>> = p
        .face_lattice()
        .expect("full-dimensional")
        .get(1)
        .cloned()
        .unwrap_or_default();

    let cone_over = |set: &[usize]| {
        let rays: Vec<Vec<Int>> = set.iter().map(|&i| vertices[i].clone()).collect();
        Cone::new(rank, &rays).expect("face cones of a Fano polytope are strongly convex")
    };
    let is_smooth_cone = |set: &[usize]| cone_report(&cone_over(set)).smooth;

    // minimal singular cones: singular edges, and singular facets all of
    // whose edges are smooth
    let singular_edges: Vec<&Vec<usize>> =
        edges.iter().filter(|e| !is_smooth_cone(e)).collect();
    let singular_edge_set: BTreeSet<&Vec<usize>> = singular_edges.iter().cloned().collect();
    let mut minimal: Vec<StratumSource> = Vec::new();
    for e in &singular_edges {
        minimal.push(StratumSource::Edge { vertex_indices: [e[0], e[1]] });
    }
    for f in &facet_sets {
        if is_smooth_cone(f) {
            continue;
        }
        let facet_edges_smooth = edges
            .iter()
            .filter(|e| e.iter().all(|v| f.contains(v)))
            .all(|e| !singular_edge_set.contains(e));
        if facet_edges_smooth {
            minimal.push(StratumSource::Facet { vertex_indices: f.clone() });
        }
    }
    minimal.sort();

    // adjacency: two strata meet iff their vertex sets lie in a common facet
    let source_vertices = |s: &StratumSource| -> Vec<usize> {
        match s {
            StratumSource::Facet { vertex_indices } => vertex_indices.clone(),
            StratumSource::Edge { vertex_indices } => vertex_indices.to_vec(),
        }
    };
    let in_common_facet = |a: &StratumSource, b: &StratumSource| -> bool {
        let va = source_vertices(a);
        let vb = source_vertices(b);
        facet_sets.iter().any(|f| {
            va.iter().all(|v| f.contains(v)) && vb.iter().all(|v| f.contains(v))
        })
    };
    let mut assigned = vec![false; minimal.len()];
    let mut components: Vec<SingularComponent> = Vec::new();
    for start in 0..minimal.len() {
        if assigned[start] {
            continue;
        }
        let mut queue = vec![start];
        let mut members = vec![start];
        assigned[start] = true;
        while let Some(i) = queue.pop() {
            for j in 0..minimal.len() {
                if !assigned[j] && in_common_facet(&minimal[i], &minimal[j]) {
                    assigned[j] = true;
                    queue.push(j);
                    members.push(j);
                }
            }
        }
        members.sort();
        let sources: Vec<StratumSource> =
            members.iter().map(|&i| minimal[i].clone()).collect();
        components.push(classify_component(p, &facet_sets, sources, &cone_over, |a, b| {
            in_common_facet(a, b)
        }));
    }
    components.sort_by(|a, b| a.sources.cmp(&b.sources));
    Ok(SingularLocusReport { components })
}

fn classify_component(
    p: &LatticePolytope,
    _facet_sets: &[Vec<usize>],
    sources: Vec<StratumSource>,
    cone_over: &dyn Fn(&[usize]) -> Cone,
    adjacent: impl Fn(&StratumSource, &StratumSource) -> bool,
) -> SingularComponent {
    let all_edges = sources
        .iter()
        .all(|s| matches!(s, StratumSource::Edge { .. }));
    if sources.len() == 1 && !all_edges {
        let StratumSource::Facet { vertex_indices } = &sources[0] else { unreachable!() };
        let cone = cone_over(vertex_indices);
        let report = cone_report(&cone);
        if report.simplicial {
            let key = report
                .quotient_type
                .as_ref()
                .map_or_else(|| String::from("simplicial_singular"), |qt| format!("{}", qt));
            return SingularComponent {
                kind: StratumKind::QuotientPoint,
                catalog_key: key,
                sources,
            };
        }
        let polygon = polygon_normal_form(&p.face_hull(vertex_indices).sublattice_polytope());
        let key = match polygon.tag {
            PolygonTag::Dp6Hexagon => String::from("cone_over_dP6"),
            PolygonTag::StandardSquare => String::from("ordinary_double_point"),
            PolygonTag::F1Quadrilateral => String::from("cone_over_F1"),
            other => format!("cone_over_{}", other.label()),
        };
        return SingularComponent {
            kind: StratumKind::GorensteinConePoint,
            catalog_key: key,
            sources,
        };
    }
    // edge strata: transverse quotient curves
    let a1 = QuotientType { order: Int::from(2), weights: vec![Int::one(), Int::one()] };
    let all_a1 = sources.iter().all(|s| {
        let StratumSource::Edge { vertex_indices } = s else { return false };
        cone_report(&cone_over(&vertex_indices[..])).quotient_type.as_ref() == Some(&a1)
    });
    let n = sources.len();
    let degrees: Vec<usize> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && adjacent(&sources[i], &sources[j]))
                .count()
        })
        .collect();
    let is_cycle = n >= 3 && degrees.iter().all(|&d| d == 2);
    let prefix = if all_a1 {
        String::from("transverse_A1")
    } else {
        String::from("transverse_quotient")
    };
    let key = if n == 1 {
        format!("{}_curve", prefix)
    } else if is_cycle {
        format!("{}_cycle_of_{}", prefix, n)
    } else {
        format!("{}_curves_{}", prefix, n)
    };
    SingularComponent { kind: StratumKind::QuotientCurves, catalog_key: key, sources }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;
    use crate::poly::vanishes_under_monomial_map;

    fn cone_i64(ambient: usize, rays: &[&[i64]]) -> Cone {
        let rays: Vec<Vec<Int>> = rays.iter().map(|r| ivec(r)).collect();
        Cone::new(ambient, &rays).unwrap()
    }

    fn hex_prism() -> LatticePolytope {
        // prism over the dP6 hexagon
        let hex = [[1i64, 0], [0, 1], [-1, 0], [0, -1], [1, 1], [-1, -1]];
        let mut pts: Vec<Vec<Int>> = Vec::new();
        for h in &hex {
            for z in [1i64, -1] {
                pts.push(ivec(&[h[0], h[1], z]));
            }
        }
        LatticePolytope::hull(3, &pts)
    }

    #[test]
    fn cones_must_be_strongly_convex() {
        let rays = [ivec(&[1, 0]), ivec(&[-1, 0])];
        assert_eq!(Cone::new(2, &rays), Err(FanError::NotStronglyConvex));
        let rays2 = [ivec(&[1, 0]), ivec(&[-1, 2]), ivec(&[0, -1])];
        assert_eq!(Cone::new(2, &rays2), Err(FanError::NotStronglyConvex));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let cone = cone_i64(2, &[&[1, 0], &[1, 1], &[0, 1], &[2, 4]]);
        assert_eq!(cone.rays(), &[ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn unimodular_cone_report() {
        let report = cone_report(&cone_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(report.smooth && report.simplicial);
        assert_eq!(report.gorenstein_index, Some(Int::one()));
        assert_eq!(report.quotient_type, None);
        assert_eq!((report.canonical, report.terminal), (Some(true), Some(true)));
    }

    #[test]
    fn cone_over_unit_square_is_terminal_gorenstein() {
        let cone = cone_i64(3, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        let report = cone_report(&cone);
        assert!(!report.simplicial && !report.smooth);
        assert_eq!(report.gorenstein_index, Some(Int::one()));
        assert_eq!((report.canonical, report.terminal), (Some(true), Some(true)));
    }

    #[test]
    fn surface_quotient_types() {
        // lattice index two: the A1 cone
        let a1 = cone_report(&cone_i64(2, &[&[1, 0], &[1, 2]]));
        assert_eq!(
            a1.quotient_type,
            Some(QuotientType { order: Int::from(2), weights: alloc::vec![Int::one(), Int::one()] })
        );
        assert_eq!(a1.gorenstein_index, Some(Int::one()));
        assert_eq!((a1.canonical, a1.terminal), (Some(true), Some(false)));
        // index three with weights (1,2): the A2 cone
        let a2 = cone_report(&cone_i64(2, &[&[1, 0], &[1, 3]]));
        let qt = a2.quotient_type.unwrap();
        assert_eq!(qt.order, Int::from(3));
        assert_eq!(qt.weights, alloc::vec![Int::one(), Int::from(2)]);
        assert_eq!(alloc::format!("{}", qt), "1/3(1,2)");
    }

    #[test]
    fn threefold_quotient_one_third() {
        let cone = cone_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]);
        let report = cone_report(&cone);
        assert!(report.simplicial && !report.smooth);
        assert_eq!(report.gorenstein_index, Some(Int::from(3)));
        let qt = report.quotient_type.unwrap();
        assert_eq!(alloc::format!("{}", qt), "1/3(1,1,2)");
        // terminal of type 1/n(1,-1,q)
        assert_eq!((report.canonical, report.terminal), (Some(true), Some(true)));
    }

    #[test]
    fn dual_basis_of_smooth_cone() {
        let hb = dual_cone_hilbert_basis(&cone_i64(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(hb.generators, &[ivec(&[0, 1]), ivec(&[1, 0])]);
        assert!(hb.units.is_empty());
    }

    #[test]
    fn a1_chart_has_three_generators_and_one_relation() {
        let cone = cone_i64(2, &[&[1, 0], &[1, 2]]);
        let chart = chart_presentation(&cone, &mut StepBudget::default()).unwrap();
        assert_eq!(chart.hilbert_basis.generators.len(), 3);
        assert_eq!(chart.relations.len(), 1);
        let vars = ["x", "y", "z"];
        let expected = crate::poly::parse_polynomial("y^2 - x*z", &vars).unwrap();
        assert_eq!(chart.relations, alloc::vec![expected]);
    }

    #[test]
    fn conifold_chart_relation() {
        let cone = cone_i64(3, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        let chart = chart_presentation(&cone, &mut StepBudget::default()).unwrap();
        assert_eq!(chart.hilbert_basis.generators.len(), 4);
        assert_eq!(chart.relations.len(), 1);
        let rel = &chart.relations[0];
        let degrees: Vec<u32> = rel.terms().keys().map(|e| e.iter().sum()).collect();
        assert_eq!(degrees, alloc::vec![2, 2]);
        assert!(vanishes_under_monomial_map(rel, &chart.generator_exponents));
    }

    #[test]
    fn prism_side_chart_relation() {
        // cone over a rect_1x2 facet: the chart x*y = z^2*t^2
        let cone = cone_i64(3, &[&[1, 0, 1], &[1, 0, -1], &[1, 1, 1], &[1, 1, -1]]);
        let chart = chart_presentation(&cone, &mut StepBudget::default()).unwrap();
        assert_eq!(chart.hilbert_basis.generators.len(), 4);
        assert_eq!(chart.relations.len(), 1);
        let rel = &chart.relations[0];
        let mut degrees: Vec<u32> = rel.terms().keys().map(|e| e.iter().sum()).collect();
        degrees.sort();
        assert_eq!(degrees, alloc::vec![2, 4]);
        assert!(vanishes_under_monomial_map(rel, &chart.generator_exponents));
    }

    #[test]
    fn lower_dimensional_cone_has_unit_functionals() {
        let cone = cone_i64(3, &[&[1, 0, 0], &[1, 2, 0]]);
        let hb = dual_cone_hilbert_basis(&cone);
        assert_eq!(hb.units, &[ivec(&[0, 0, 1])]);
        assert_eq!(hb.generators.len(), 3);
    }

    #[test]
    fn face_fan_of_simplex() {
        let p = LatticePolytope::hull_i64(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
        );
        let fan = face_fan(&p).unwrap();
        assert_eq!(fan.max_cone_count(), 4);
        assert!(fan.is_complete());
        assert_eq!(picard_rank(&fan).unwrap(), 1);
        let euler = fan.ray_count() as i64 - fan.wall_count() as i64
            + fan.max_cone_count() as i64;
        assert_eq!(euler, 2);
    }

    #[test]
    fn face_fan_rejects_non_fano_input() {
        let shifted = LatticePolytope::hull_i64(2, &[&[0, 0], &[2, 0], &[0, 2]]);
        assert!(matches!(face_fan(&shifted), Err(FanError::NotFano { .. })));
        let imprimitive =
            LatticePolytope::hull_i64(2, &[&[2, 0], &[-2, 0], &[0, 1], &[0, -1]]);
        assert!(matches!(face_fan(&imprimitive), Err(FanError::NotFano { .. })));
    }

    #[test]
    fn normal_fan_of_polar_is_face_fan() {
        let octahedron = LatticePolytope::hull_i64(
            3,
            &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        );
        let fan = face_fan(&octahedron).unwrap();
        let polar = octahedron.polar().unwrap();
        assert_eq!(normal_fan(&polar).unwrap(), fan);
        assert_eq!(picard_rank(&fan).unwrap(), 3);
        // simplicial fan: picard rank hits the bound d1 - 3
        assert_eq!(fan.ray_count() - 3, 3);
    }

    #[test]
    fn incomplete_fan_is_detected() {
        let octant = cone_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let fan = Fan::from_max_cones(3, alloc::vec![octant]).unwrap();
        assert!(!fan.is_complete());
        assert_eq!(picard_rank(&fan), Err(FanError::NotComplete));
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        // two cones sharing two rays whose span is not a face (the shared
        // pair is separated by the first cone's diagonal structure)
        let square = cone_i64(3, &[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        let diagonal = cone_i64(3, &[&[0, 0, 1], &[1, 1, 1], &[2, 1, 3]]);
        assert_eq!(
            Fan::from_max_cones(3, alloc::vec![square, diagonal]),
            Err(FanError::NotAFan)
        );
    }

    #[test]
    fn nef_and_cartier_on_a_product_fan() {
        let square =
            LatticePolytope::hull_i64(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
        let fan = face_fan(&square).unwrap();
        let anticanonical = ToricDivisor::anticanonical(&fan);
        assert!(is_cartier(&fan, &anticanonical));
        assert!(is_nef(&fan, &anticanonical));
        // a single prime divisor is nef; its negative is not
        let e1 = fan.ray_index(&ivec(&[1, 0])).unwrap();
        let mut coeffs = alloc::vec![Int::zero(); fan.ray_count()];
        coeffs[e1] = Int::one();
        assert!(is_nef(&fan, &ToricDivisor::new(&fan, coeffs.clone())));
        coeffs[e1] = -Int::one();
        assert!(!is_nef(&fan, &ToricDivisor::new(&fan, coeffs)));
    }

    #[test]
    fn smooth_fan_has_empty_singular_report() {
        let octahedron = LatticePolytope::hull_i64(
            3,
            &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        );
        let report = singular_locus_report(&octahedron).unwrap();
        assert!(report.is_smooth());
    }

    #[test]
    fn cube_fan_singular_locus_is_a_single_curve_network() {
        let mut pts = Vec::new();
        for x in [-1i64, 1] {
            for y in [-1i64, 1] {
                for z in [-1i64, 1] {
                    pts.push(ivec(&[x, y, z]));
                }
            }
        }
        let cube = LatticePolytope::hull(3, &pts);
        let report = singular_locus_report(&cube).unwrap();
        assert_eq!(report.components.len(), 1);
        let component = &report.components[0];
        assert_eq!(component.kind, StratumKind::QuotientCurves);
        assert_eq!(component.sources.len(), 12);
        assert_eq!(component.catalog_key, "transverse_A1_curves_12");
    }

    #[test]
    fn hexagonal_prism_structure() {
        let prism = hex_prism();
        assert_eq!(prism.f_vector().unwrap(), alloc::vec![12, 18, 8]);
        assert!(prism.is_reflexive());
        let fan = face_fan(&prism).unwrap();
        assert!(fan.is_complete());
        assert_eq!(picard_rank(&fan).unwrap(), 1);
        let anticanonical = ToricDivisor::anticanonical(&fan);
        assert!(is_cartier(&fan, &anticanonical) && is_nef(&fan, &anticanonical));

        let report = singular_locus_report(&prism).unwrap();
        assert_eq!(report.components.len(), 3);
        let keys: Vec<&str> =
            report.components.iter().map(|c| c.catalog_key.as_str()).collect();
        assert_eq!(keys.iter().filter(|k| **k == "cone_over_dP6").count(), 2);
        assert_eq!(
            keys.iter().filter(|k| **k == "transverse_A1_cycle_of_6").count(),
            1
        );
        let cycle = report
            .components
            .iter()
            .find(|c| c.kind == StratumKind::QuotientCurves)
            .unwrap();
        assert_eq!(cycle.sources.len(), 6);
    }
}
