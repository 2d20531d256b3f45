//! Lattice and rational polytopes: hulls, halfspace representations, polars,
//! lattice point enumeration, exact volumes and barycenters, face lattices,
//! unimodular symmetry groups, and affine normal forms of lattice polygons.
//!
//! Everything is exact. Vertices are kept in sorted (lex) order so that equal
//! polytopes compare equal structurally. Hull computation is by exhaustive
//! hyperplane combinatorics, which is entirely adequate for the small ranks
//! (at most 6) this crate targets; there is no general-dimension performance
//! goal.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{
    integer_kernel, int_rows_rank, int_solve, irdot, rat_det, rat_rank, rat_solve, rref,
    to_rat_vec, vsub, IntMatrix,
};
use crate::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeError {
    /// Operation needs a full-dimensional polytope.
    Degenerate { affine_rank: usize, lattice_rank: usize },
    /// Polar requested but the origin is not an interior point.
    OriginNotInterior,
    /// Halfspace intersection has a nonzero recession cone.
    Unbounded,
    /// Halfspace intersection is empty.
    EmptyRegion,
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::Degenerate { affine_rank, lattice_rank } => write!(
                f,
                "polytope of affine rank {} is not full-dimensional in rank {}",
                affine_rank, lattice_rank
            ),
            PolytopeError::OriginNotInterior => write!(f, "origin is not interior"),
            PolytopeError::Unbounded => write!(f, "halfspace region is unbounded"),
            PolytopeError::EmptyRegion => write!(f, "halfspace region is empty"),
        }
    }
}

impl core::error::Error for PolytopeError {}

/// Closed halfspace `{ x : <normal, x> >= rhs }` with a primitive integer
/// normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<Int>,
    pub rhs: Rat,
}

impl Halfspace {
    pub fn new(normal: Vec<Int>, rhs: Rat) -> Halfspace {
        Halfspace { normal, rhs }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        irdot(&self.normal, x) >= self.rhs
    }

    pub fn contains_strictly(&self, x: &[Rat]) -> bool {
        irdot(&self.normal, x) > self.rhs
    }

    pub fn is_tight_at(&self, x: &[Rat]) -> bool {
        irdot(&self.normal, x) == self.rhs
    }
}

/// Shared exact hull data behind both polytope types.
#[derive(Clone, Debug, PartialEq, Eq)]
struct HullCore {
    lattice_rank: usize,
    affine_rank: usize,
    /// Extreme points, sorted lex.
    vertices: Vec<Vec<Rat>>,
    /// Facet inequalities within the affine hull, sorted.
    halfspaces: Vec<Halfspace>,
    /// Vertex indices tight on each halfspace, aligned with `halfspaces`.
    tight: Vec<Vec<usize>>,
    /// Affine hull equations `<a, x> = b`; empty iff full-dimensional.
    equations: Vec<(Vec<Int>, Rat)>,
}

/// Scales a rational vector to a primitive integer vector pointing the same
/// way. Panics on the zero vector.
fn primitive_int_direction(v: &[Rat]) -> Vec<Int> {
    let mut scale = Int::one();
    for x in v {
        scale = scale.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from(scale.clone())).to_integer()).collect();
    assert!(ints.iter().any(|x| !x.is_zero()), "zero direction");
    crate::linalg::primitive(&ints)
}

fn all_indices(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// All k-subsets of 0..n in lex order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Facets of a full-dimensional point configuration in `R^dim`: one entry per
/// supporting hyperplane containing `dim` affinely independent points with all
/// points on the non-negative side. Returns (normal, rhs, tight indices).
fn full_dim_facets(points: &[Vec<Rat>], dim: usize) -> Vec<(Vec<Int>, Rat, Vec<usize>)> {
    assert!(dim >= 1);
    let n = points.len();
    let mut seen: BTreeMap<(Vec<Int>, Rat), Vec<usize>> = BTreeMap::new();
    for subset in combinations(n, dim) {
        // normal direction: functionals vanishing on the differences
        let diffs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| crate::linalg::rvsub(&points[i], &points[subset[0]]))
            .collect();
        let null = crate::linalg::rat_nullspace_of(&diffs, dim);
        if null.len() != 1 {
            continue; // subset not spanning a hyperplane
        }
        let mut normal = primitive_int_direction(&null[0]);
        let mut rhs = irdot(&normal, &points[subset[0]]);
        let mut below = false;
        let mut above = false;
        for p in points {
            let v = irdot(&normal, p);
            if v > rhs {
                above = true;
            } else if v < rhs {
                below = true;
            }
        }
        if above && below {
            continue; // cuts through the configuration
        }
        if above {
            // keep: inner side is >=
        } else if below {
            normal = normal.iter().map(|x| -x).collect();
            rhs = -rhs;
        } else {
            // all points on the hyperplane: caller guaranteed full dimension
            continue;
        }
        let tight: Vec<usize> =
            (0..n).filter(|&i| irdot(&normal, &points[i]) == rhs).collect();
        seen.insert((normal, rhs), tight);
    }
    seen.into_iter().map(|((n0, r0), t)| (n0, r0, t)).collect()
}

fn build_core(lattice_rank: usize, points_in: &[Vec<Rat>]) -> HullCore {
    assert!(!points_in.is_empty(), "hull of no points");
    for p in points_in {
        assert_eq!(p.len(), lattice_rank, "point of wrong rank");
    }
    let dedup: BTreeSet<Vec<Rat>> = points_in.iter().cloned().collect();
    let points: Vec<Vec<Rat>> = dedup.into_iter().collect();

    // Affine hull: rank, chart coordinates, and integral equations.
    let base = points[0].clone();
    let diffs: Vec<Vec<Rat>> = points[1..].iter().map(|p| crate::linalg::rvsub(p, &base)).collect();
    let (affine_rank, pivot_cols) = if diffs.is_empty() {
        (0, Vec::new())
    } else {
        let mut work = diffs.clone();
        let pivots = rref(&mut work);
        (pivots.len(), pivots)
    };
    let mut equations: Vec<(Vec<Int>, Rat)> = Vec::new();
    if affine_rank < lattice_rank {
        let null = crate::linalg::rat_nullspace_of(&diffs, lattice_rank);
        for dir in null {
            let a = primitive_int_direction(&dir);
            let b = irdot(&a, &base);
            equations.push((a, b));
        }
        equations.sort();
    }

    if affine_rank == 0 {
        return HullCore {
            lattice_rank,
            affine_rank,
            vertices: points,
            halfspaces: Vec::new(),
            tight: Vec::new(),
            equations,
        };
    }

    let chart = |p: &Vec<Rat>| -> Vec<Rat> { pivot_cols.iter().map(|&j| p[j].clone()).collect() };
    let chart_points: Vec<Vec<Rat>> = points.iter().map(chart).collect();
    let facets = full_dim_facets(&chart_points, affine_rank);

    // Extreme points: tight facet normals span the chart.
    let mut extreme: Vec<usize> = Vec::new();
    for i in 0..points.len() {
        let normals: Vec<Vec<Rat>> = facets
            .iter()
            .filter(|(_, _, t)| t.contains(&i))
            .map(|(n, _, _)| to_rat_vec(n))
            .collect();
        if rat_rank(&normals) == affine_rank {
            extreme.push(i);
        }
    }
    let vertices: Vec<Vec<Rat>> = extreme.iter().map(|&i| points[i].clone()).collect();
    // already sorted: `points` is sorted and `extreme` ascending

    // Lift chart halfspaces to ambient coordinates (zero off the chart
    // columns; valid on the affine hull) and re-derive tight sets against the
    // final vertex list.
    let mut lifted: Vec<(Halfspace, Vec<usize>)> = Vec::new();
    for (normal, rhs, _) in facets {
        let mut amb = vec![Int::zero(); lattice_rank];
        for (k, &j) in pivot_cols.iter().enumerate() {
            amb[j] = normal[k].clone();
        }
        let hs = Halfspace::new(amb, rhs);
        let tight: Vec<usize> =
            (0..vertices.len()).filter(|&i| hs.is_tight_at(&vertices[i])).collect();
        lifted.push((hs, tight));
    }
    lifted.sort();
    let (halfspaces, tight): (Vec<_>, Vec<_>) = lifted.into_iter().unzip();

    HullCore { lattice_rank, affine_rank, vertices, halfspaces, tight, equations }
}

impl HullCore {
    fn is_full_dimensional(&self) -> bool {
        self.affine_rank == self.lattice_rank
    }

    fn require_full_dimensional(&self) -> Result<(), PolytopeError> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(PolytopeError::Degenerate {
                affine_rank: self.affine_rank,
                lattice_rank: self.lattice_rank,
            })
        }
    }

    fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.lattice_rank);
        if self.affine_rank == 0 {
            return self.vertices[0].as_slice() == x;
        }
        self.equations.iter().all(|(a, b)| irdot(a, x) == *b)
            && self.halfspaces.iter().all(|h| h.contains(x))
    }

    fn contains_strictly(&self, x: &[Rat]) -> bool {
        self.is_full_dimensional() && self.halfspaces.iter().all(|h| h.contains_strictly(x))
    }

    fn lattice_points(&self) -> Vec<Vec<Int>> {
        let rank = self.lattice_rank;
        let mut lo = Vec::with_capacity(rank);
        let mut hi = Vec::with_capacity(rank);
        if self.vertices.is_empty() {
            return Vec::new();
        }
        for j in 0..rank {
            let mut mn = self.vertices[0][j].clone();
            let mut mx = mn.clone();
            for v in &self.vertices[1..] {
                if v[j] < mn {
                    mn = v[j].clone();
                }
                if v[j] > mx {
                    mx = v[j].clone();
                }
            }
            lo.push(mn.ceil().to_integer());
            hi.push(mx.floor().to_integer());
        }
        if (0..rank).any(|j| lo[j] > hi[j]) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            let as_rat = to_rat_vec(&cur);
            if self.contains(&as_rat) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                cur[i] += 1;
                if cur[i] <= hi[i] {
                    break;
                }
                cur[i] = lo[i].clone();
                i += 1;
                if i == rank {
                    break 'outer;
                }
            }
        }
        out.sort();
        out
    }

    /// Simplices (as vertex index lists) of a fanning triangulation.
    fn triangulation(&self) -> Result<Vec<Vec<usize>>, PolytopeError> {
        self.require_full_dimensional()?;
        Ok(triangulate_points(&self.vertices, self.lattice_rank))
    }

    fn normalized_volume(&self) -> Result<Rat, PolytopeError> {
        let tri = self.triangulation()?;
        let mut total = Rat::zero();
        for simplex in tri {
            total += simplex_det(&self.vertices, &simplex).abs();
        }
        Ok(total)
    }

    fn barycenter(&self) -> Result<Vec<Rat>, PolytopeError> {
        let tri = self.triangulation()?;
        let rank = self.lattice_rank;
        let mut total = Rat::zero();
        let mut weighted = vec![Rat::zero(); rank];
        let denom = Rat::from(Int::from(rank as i64 + 1));
        for simplex in tri {
            let w = simplex_det(&self.vertices, &simplex).abs();
            if w.is_zero() {
                continue;
            }
            for j in 0..rank {
                let mut c = Rat::zero();
                for &i in &simplex {
                    c += &self.vertices[i][j];
                }
                weighted[j] += &w * c / &denom;
            }
            total += w;
        }
        assert!(!total.is_zero(), "volume of full-dimensional polytope is zero");
        Ok(weighted.into_iter().map(|x| x / &total).collect())
    }

    /// All nonempty proper faces as sorted vertex index sets, grouped by
    /// dimension (index 0 holds the vertices, the last entry the facets).
    fn face_lattice(&self) -> Result<Vec<Vec<Vec<usize>>>, PolytopeError> {
        self.require_full_dimensional()?;
        let mut sets: BTreeSet<Vec<usize>> = self.tight.iter().cloned().collect();
        loop {
            let snapshot: Vec<Vec<usize>> = sets.iter().cloned().collect();
            let mut grew = false;
            for i in 0..snapshot.len() {
                for j in i + 1..snapshot.len() {
                    let meet: Vec<usize> = snapshot[i]
                        .iter()
                        .filter(|v| snapshot[j].binary_search(v).is_ok())
                        .cloned()
                        .collect();
                    if !meet.is_empty() && !sets.contains(&meet) {
                        sets.insert(meet);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); self.lattice_rank];
        for set in sets {
            let pts: Vec<Vec<Rat>> = set.iter().map(|&i| self.vertices[i].clone()).collect();
            let diffs: Vec<Vec<Rat>> =
                pts[1..].iter().map(|p| crate::linalg::rvsub(p, &pts[0])).collect();
            let dim = rat_rank(&diffs);
            assert!(dim < self.lattice_rank, "proper face of full dimension");
            by_dim[dim].push(set);
        }
        Ok(by_dim)
    }
}

fn simplex_det(vertices: &[Vec<Rat>], simplex: &[usize]) -> Rat {
    let base = &vertices[simplex[0]];
    let rows: Vec<Vec<Rat>> =
        simplex[1..].iter().map(|&i| crate::linalg::rvsub(&vertices[i], base)).collect();
    rat_det(&rows)
}

/// Fanning triangulation of the extreme points of a full-dimensional polytope
/// in `R^dim`: cone from point 0 over recursively triangulated facets.
fn triangulate_points(points: &[Vec<Rat>], dim: usize) -> Vec<Vec<usize>> {
    assert!(points.len() >= dim + 1);
    if points.len() == dim + 1 {
        return vec![all_indices(points.len())];
    }
    let facets = full_dim_facets(points, dim);
    let mut out = Vec::new();
    for (normal, _, tight) in facets {
        if tight.contains(&0) {
            continue;
        }
        // project the facet along a coordinate its normal does not annihilate
        let drop = normal.iter().position(|x| !x.is_zero()).expect("zero facet normal");
        let sub: Vec<Vec<Rat>> = tight
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != drop)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        if dim == 1 {
            // facet of a segment is a point
            out.push(vec![0, tight[0]]);
            continue;
        }
        for tri in triangulate_points(&sub, dim - 1) {
            let mut simplex = vec![0usize];
            simplex.extend(tri.into_iter().map(|k| tight[k]));
            out.push(simplex);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// lattice polytopes

/// Convex hull of finitely many integer lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    core: HullCore,
    vertices: Vec<Vec<Int>>,
}

impl LatticePolytope {
    /// Convex hull; keeps only the extreme points, in lex order.
    pub fn hull(lattice_rank: usize, points: &[Vec<Int>]) -> LatticePolytope {
        let rat_pts: Vec<Vec<Rat>> = points.iter().map(|p| to_rat_vec(p)).collect();
        let core = build_core(lattice_rank, &rat_pts);
        let vertices = core.vertices.iter().map(|v| crate::linalg::rat_vec_to_int(v)).collect();
        LatticePolytope { core, vertices }
    }

    pub fn hull_i64(lattice_rank: usize, points: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<Vec<Int>> = points.iter().map(|p| crate::ivec(p)).collect();
        LatticePolytope::hull(lattice_rank, &pts)
    }

    pub fn lattice_rank(&self) -> usize {
        self.core.lattice_rank
    }

    pub fn affine_rank(&self) -> usize {
        self.core.affine_rank
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.core.is_full_dimensional()
    }

    pub fn vertices(&self) -> &[Vec<Int>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Irredundant facet inequalities `<n, x> >= rhs`, primitive integer
    /// normals. Errors on lower-dimensional polytopes.
    pub fn facets(&self) -> Result<&[Halfspace], PolytopeError> {
        self.core.require_full_dimensional()?;
        Ok(&self.core.halfspaces)
    }

    /// Vertex indices tight on each facet, aligned with `facets()`.
    pub fn facet_vertex_sets(&self) -> Result<&[Vec<usize>], PolytopeError> {
        self.core.require_full_dimensional()?;
        Ok(&self.core.tight)
    }

    /// Affine hull equations `<a, x> = b`; empty iff full-dimensional.
    pub fn hull_equations(&self) -> &[(Vec<Int>, Rat)] {
        &self.core.equations
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.core.contains(&to_rat_vec(x))
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.core.contains(x)
    }

    pub fn contains_strictly(&self, x: &[Rat]) -> bool {
        self.core.contains_strictly(x)
    }

    pub fn lattice_points(&self) -> Vec<Vec<Int>> {
        self.core.lattice_points()
    }

    pub fn interior_lattice_points(&self) -> Result<Vec<Vec<Int>>, PolytopeError> {
        self.core.require_full_dimensional()?;
        Ok(self
            .lattice_points()
            .into_iter()
            .filter(|p| self.core.contains_strictly(&to_rat_vec(p)))
            .collect())
    }

    pub fn boundary_lattice_points(&self) -> Result<Vec<Vec<Int>>, PolytopeError> {
        self.core.require_full_dimensional()?;
        Ok(self
            .lattice_points()
            .into_iter()
            .filter(|p| !self.core.contains_strictly(&to_rat_vec(p)))
            .collect())
    }

    pub fn origin_is_interior(&self) -> bool {
        self.is_full_dimensional()
            && self.core.halfspaces.iter().all(|h| h.rhs.is_negative())
    }

    /// Euclidean volume times (rank!).
    pub fn normalized_volume(&self) -> Result<Rat, PolytopeError> {
        self.core.normalized_volume()
    }

    /// Volume-weighted centroid of the solid polytope.
    pub fn barycenter(&self) -> Result<Vec<Rat>, PolytopeError> {
        self.core.barycenter()
    }

    /// Simplices of a fanning triangulation, as vertex index lists.
    pub fn triangulation(&self) -> Result<Vec<Vec<usize>>, PolytopeError> {
        self.core.triangulation()
    }

    /// Proper nonempty faces grouped by dimension: entry `k` lists the
    /// k-faces as sorted vertex index sets.
    pub fn face_lattice(&self) -> Result<Vec<Vec<Vec<usize>>>, PolytopeError> {
        self.core.face_lattice()
    }

    /// Face counts by dimension: `(vertices, edges, ..., facets)`.
    pub fn f_vector(&self) -> Result<Vec<usize>, PolytopeError> {
        Ok(self.face_lattice()?.iter().map(Vec::len).collect())
    }

    /// The face spanned by the given vertex indices, as a lower-dimensional
    /// lattice polytope in the ambient lattice.
    pub fn face_hull(&self, vertex_indices: &[usize]) -> LatticePolytope {
        let pts: Vec<Vec<Int>> =
            vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect();
        LatticePolytope::hull(self.lattice_rank(), &pts)
    }

    /// Re-expresses the polytope in coordinates for the saturated sublattice
    /// of its own affine hull, translated so one vertex is the origin. The
    /// result is full-dimensional of rank `affine_rank` and has the same
    /// lattice point counts, volumes and polygon class.
    pub fn sublattice_polytope(&self) -> LatticePolytope {
        if self.is_full_dimensional() {
            return self.clone();
        }
        let base = &self.vertices[0];
        let diffs: Vec<Vec<Int>> =
            self.vertices[1..].iter().map(|v| vsub(v, base)).collect();
        if diffs.is_empty() {
            return LatticePolytope::hull(0, &[Vec::new()]);
        }
        let normals = integer_kernel(&IntMatrix::from_rows(diffs));
        let basis = integer_kernel(&IntMatrix::from_rows(normals));
        let basis_t = IntMatrix::from_rows(basis).transpose();
        let coords: Vec<Vec<Int>> = self
            .vertices
            .iter()
            .map(|v| {
                int_solve(&basis_t, &vsub(v, base))
                    .expect("saturated basis must span the face lattice")
            })
            .collect();
        LatticePolytope::hull(basis_t.cols(), &coords)
    }

    /// Interior lattice point count of every facet (in its own affine
    /// lattice), aligned with `facets()`.
    pub fn facet_interior_lattice_points(&self) -> Result<Vec<usize>, PolytopeError> {
        let sets = self.facet_vertex_sets()?.to_vec();
        let mut out = Vec::with_capacity(sets.len());
        for set in sets {
            let face = self.face_hull(&set).sublattice_polytope();
            out.push(face.interior_lattice_points()?.len());
        }
        Ok(out)
    }

    /// The polar `{ m : <m, v> >= -1 for all v in P }`.
    pub fn polar(&self) -> Result<RationalPolytope, PolytopeError> {
        self.to_rational().polar()
    }

    /// Reflexive: origin interior and all polar vertices integral.
    pub fn is_reflexive(&self) -> bool {
        match self.polar() {
            Ok(q) => q.is_lattice(),
            Err(_) => false,
        }
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        let set: BTreeSet<&Vec<Int>> = self.vertices.iter().collect();
        self.vertices.iter().all(|v| set.contains(&crate::linalg::vneg(v)))
    }

    pub fn to_rational(&self) -> RationalPolytope {
        RationalPolytope { core: self.core.clone() }
    }

    /// All unimodular matrices permuting the vertex set (acting on column
    /// vectors), found by mapping one linearly independent vertex tuple to
    /// candidate images. Requires a full-dimensional polytope whose vertices
    /// linearly span (true whenever the origin is interior).
    pub fn lattice_automorphisms(&self) -> Result<LatticeAutomorphisms, PolytopeError> {
        self.core.require_full_dimensional()?;
        let rank = self.lattice_rank();
        let verts = &self.vertices;
        // greedy linearly independent tuple
        let mut tuple: Vec<usize> = Vec::new();
        for i in 0..verts.len() {
            let mut trial: Vec<Vec<Int>> = tuple.iter().map(|&t| verts[t].clone()).collect();
            trial.push(verts[i].clone());
            if int_rows_rank(&trial) == trial.len() {
                tuple.push(i);
                if tuple.len() == rank {
                    break;
                }
            }
        }
        assert_eq!(tuple.len(), rank, "vertices do not span; translate the polytope first");
        // columns of B are the chosen vertices; A B = W, so A = W B^{-1}
        let b_cols = IntMatrix::from_rows(tuple.iter().map(|&t| verts[t].clone()).collect())
            .transpose();
        let b_inv = invert_rat(&b_cols);
        let vertex_set: BTreeSet<Vec<Int>> = verts.iter().cloned().collect();
        let mut elements: Vec<IntMatrix> = Vec::new();
        let mut images = vec![0usize; rank];
        enumerate_tuples(verts.len(), rank, &mut images, 0, &mut |choice| {
            let w_cols = IntMatrix::from_rows(choice.iter().map(|&t| verts[t].clone()).collect())
                .transpose();
            let Some(a) = int_matrix_product(&w_cols, &b_inv) else {
                return;
            };
            if a.det().abs() != Int::one() {
                return;
            }
            let ok = verts.iter().all(|v| vertex_set.contains(&a.apply(v)));
            if ok {
                elements.push(a);
            }
        });
        elements.sort_by(|x, y| x.row_vecs().cmp(&y.row_vecs()));
        let generators = small_generating_set(&elements, rank);
        Ok(LatticeAutomorphisms { order: elements.len(), generators, elements })
    }
}

/// Unimodular symmetry group of a polytope.
#[derive(Clone, Debug)]
pub struct LatticeAutomorphisms {
    pub order: usize,
    pub generators: Vec<IntMatrix>,
    pub elements: Vec<IntMatrix>,
}

impl LatticeAutomorphisms {
    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.elements.iter().any(|e| e == m)
    }
}

fn enumerate_tuples(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    depth: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(buf);
        return;
    }
    for i in 0..n {
        if buf[..depth].contains(&i) {
            continue;
        }
        buf[depth] = i;
        enumerate_tuples(n, k, buf, depth + 1, f);
    }
}

/// Rational inverse of a square integer matrix (columns as given).
fn invert_rat(m: &IntMatrix) -> Vec<Vec<Rat>> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = to_rat_vec(m.row(i));
            for j in 0..n {
                row.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    assert_eq!(pivots, all_indices(n), "matrix not invertible");
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Integer part of `W * B_inv` if that product is integral.
fn int_matrix_product(w: &IntMatrix, b_inv: &[Vec<Rat>]) -> Option<IntMatrix> {
    let n = w.rows();
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = Rat::zero();
            for k in 0..n {
                acc += Rat::from(w.at(i, k).clone()) * &b_inv[k][j];
            }
            if !acc.is_integer() {
                return None;
            }
            row.push(acc.to_integer());
        }
        rows.push(row);
    }
    Some(IntMatrix::from_rows(rows))
}

fn small_generating_set(elements: &[IntMatrix], rank: usize) -> Vec<IntMatrix> {
    let identity = IntMatrix::identity(rank);
    let mut gens: Vec<IntMatrix> = Vec::new();
    let mut closure: BTreeSet<Vec<Vec<Int>>> = BTreeSet::new();
    closure.insert(identity.row_vecs());
    for e in elements {
        if closure.contains(&e.row_vecs()) {
            continue;
        }
        gens.push(e.clone());
        // regenerate the closure
        closure.clear();
        closure.insert(identity.row_vecs());
        let mut frontier = vec![identity.clone()];
        while let Some(g) = frontier.pop() {
            for h in &gens {
                let prod = g.mul(h);
                if closure.insert(prod.row_vecs()) {
                    frontier.push(prod);
                }
            }
        }
        if closure.len() == elements.len() {
            break;
        }
    }
    gens
}

// ---------------------------------------------------------------------------
// rational polytopes

/// Convex hull of finitely many rational points, with a cross-validated
/// halfspace representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    core: HullCore,
}

impl RationalPolytope {
    pub fn from_points(lattice_rank: usize, points: &[Vec<Rat>]) -> RationalPolytope {
        RationalPolytope { core: build_core(lattice_rank, points) }
    }

    /// Bounded intersection of halfspaces, via basic-solution enumeration.
    pub fn from_halfspaces(
        lattice_rank: usize,
        halfspaces: &[Halfspace],
    ) -> Result<RationalPolytope, PolytopeError> {
        let normals: Vec<Vec<Int>> = halfspaces.iter().map(|h| h.normal.clone()).collect();
        if !region_is_bounded(lattice_rank, &normals) {
            return Err(PolytopeError::Unbounded);
        }
        let mut candidates: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for subset in combinations(halfspaces.len(), lattice_rank) {
            let rows: Vec<Vec<Rat>> =
                subset.iter().map(|&i| to_rat_vec(&halfspaces[i].normal)).collect();
            if rat_rank(&rows) != lattice_rank {
                continue;
            }
            let rhs: Vec<Rat> = subset.iter().map(|&i| halfspaces[i].rhs.clone()).collect();
            let x = rat_solve(&rows, &rhs).expect("full-rank square system");
            if halfspaces.iter().all(|h| h.contains(&x)) {
                candidates.insert(x);
            }
        }
        if candidates.is_empty() {
            return Err(PolytopeError::EmptyRegion);
        }
        let pts: Vec<Vec<Rat>> = candidates.into_iter().collect();
        Ok(RationalPolytope::from_points(lattice_rank, &pts))
    }

    pub fn lattice_rank(&self) -> usize {
        self.core.lattice_rank
    }

    pub fn affine_rank(&self) -> usize {
        self.core.affine_rank
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.core.is_full_dimensional()
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.core.vertices
    }

    pub fn facets(&self) -> Result<&[Halfspace], PolytopeError> {
        self.core.require_full_dimensional()?;
        Ok(&self.core.halfspaces)
    }

    pub fn facet_vertex_sets(&self) -> Result<&[Vec<usize>], PolytopeError> {
        self.core.require_full_dimensional()?;
        Ok(&self.core.tight)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.core.contains(x)
    }

    pub fn contains_strictly(&self, x: &[Rat]) -> bool {
        self.core.contains_strictly(x)
    }

    pub fn lattice_points(&self) -> Vec<Vec<Int>> {
        self.core.lattice_points()
    }

    pub fn normalized_volume(&self) -> Result<Rat, PolytopeError> {
        self.core.normalized_volume()
    }

    pub fn barycenter(&self) -> Result<Vec<Rat>, PolytopeError> {
        self.core.barycenter()
    }

    pub fn f_vector(&self) -> Result<Vec<usize>, PolytopeError> {
        Ok(self.core.face_lattice()?.iter().map(Vec::len).collect())
    }

    pub fn origin_is_interior(&self) -> bool {
        self.is_full_dimensional()
            && self.core.halfspaces.iter().all(|h| h.rhs.is_negative())
    }

    /// The polar `{ m : <m, v> >= -1 for all v in P }`; requires the origin
    /// to be interior. Satisfies `polar(polar(P)) = P`.
    pub fn polar(&self) -> Result<RationalPolytope, PolytopeError> {
        self.core.require_full_dimensional().map_err(|_| PolytopeError::OriginNotInterior)?;
        if !self.origin_is_interior() {
            return Err(PolytopeError::OriginNotInterior);
        }
        // one polar vertex per facet: normal scaled so the inequality reads
        // <., x> >= -1
        let verts: Vec<Vec<Rat>> = self
            .core
            .halfspaces
            .iter()
            .map(|h| {
                let scale = -h.rhs.recip();
                h.normal.iter().map(|n| Rat::from(n.clone()) * &scale).collect()
            })
            .collect();
        Ok(RationalPolytope::from_points(self.lattice_rank(), &verts))
    }

    pub fn is_lattice(&self) -> bool {
        self.core.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()))
    }

    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        if !self.is_lattice() {
            return None;
        }
        let vertices =
            self.core.vertices.iter().map(|v| crate::linalg::rat_vec_to_int(v)).collect();
        Some(LatticePolytope { core: self.core.clone(), vertices })
    }
}

/// True when `{ x : <n_i, x> >= * }` has trivial recession cone, i.e. every
/// halfspace intersection with these normals is bounded.
fn region_is_bounded(dim: usize, normals: &[Vec<Int>]) -> bool {
    if dim == 0 {
        return true;
    }
    if int_rows_rank(normals) < dim {
        return false; // nonzero lineality space
    }
    let recession_admits = |d: &[Int]| normals.iter().all(|n| !crate::linalg::vdot(n, d).is_negative());
    // extreme rays of the recession cone lie on dim-1 independent normals
    for subset in combinations(normals.len(), dim - 1) {
        let rows: Vec<Vec<Int>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let kernel = if rows.is_empty() {
            IntMatrix::identity(dim).row_vecs()
        } else {
            integer_kernel(&IntMatrix::from_rows(rows))
        };
        if kernel.len() != 1 {
            continue;
        }
        let g = &kernel[0];
        if recession_admits(g) || recession_admits(&crate::linalg::vneg(g)) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// polygon normal forms

/// Affine unimodular equivalence class tag for small lattice polygons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PolygonTag {
    UnimodularTriangle,
    StandardSquare,
    Rect1x2,
    Dp6Hexagon,
    F1Quadrilateral,
    Other,
}

impl PolygonTag {
    pub fn label(&self) -> &'static str {
        match self {
            PolygonTag::UnimodularTriangle => "unimodular_triangle",
            PolygonTag::StandardSquare => "standard_square",
            PolygonTag::Rect1x2 => "rect_1x2",
            PolygonTag::Dp6Hexagon => "dP6_hexagon",
            PolygonTag::F1Quadrilateral => "F1_quadrilateral",
            PolygonTag::Other => "other",
        }
    }
}

/// Canonical form of a lattice polygon under affine unimodular equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonClass {
    pub tag: PolygonTag,
    pub normal_form: Vec<Vec<Int>>,
}

/// Canonical vertex list of a full-dimensional lattice polygon under the
/// affine unimodular group, computed by exhaustive minimization over the
/// starting vertex and traversal direction. The specific form is an
/// implementation convention; what matters is that equivalent polygons map to
/// equal lists.
pub fn polygon_normal_form(p: &LatticePolytope) -> PolygonClass {
    let normal_form = canonical_polygon_vertices(p);
    let tag = classify_normal_form(&normal_form);
    PolygonClass { tag, normal_form }
}

fn canonical_polygon_vertices(p: &LatticePolytope) -> Vec<Vec<Int>> {
    assert_eq!(p.lattice_rank(), 2, "polygon normal form needs rank 2");
    assert!(p.is_full_dimensional(), "polygon normal form needs a full-dimensional polygon");
    let cycle = polygon_cycle(p);
    let m = cycle.len();
    let verts = p.vertices();
    let mut best: Option<Vec<Vec<Int>>> = None;
    for start in 0..m {
        for flip in [false, true] {
            let order: Vec<usize> = (0..m)
                .map(|k| if flip { cycle[(start + m - k) % m] } else { cycle[(start + k) % m] })
                .collect();
            let candidate = normalize_traversal(verts, &order);
            let better = match &best {
                None => true,
                Some(b) => candidate < *b,
            };
            if better {
                best = Some(candidate);
            }
        }
    }
    best.expect("polygon has vertices")
}

/// Vertex indices in boundary order (orientation unspecified).
fn polygon_cycle(p: &LatticePolytope) -> Vec<usize> {
    let edges = p.facet_vertex_sets().expect("full-dimensional polygon");
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in edges {
        assert_eq!(e.len(), 2, "polygon edge with wrong vertex count");
        adj.entry(e[0]).or_default().push(e[1]);
        adj.entry(e[1]).or_default().push(e[0]);
    }
    let m = p.vertex_count();
    let mut cycle = vec![0usize];
    let mut prev = usize::MAX;
    while cycle.len() < m {
        let cur = *cycle.last().unwrap();
        let nbrs = &adj[&cur];
        assert_eq!(nbrs.len(), 2, "polygon vertex with wrong edge count");
        let next = if nbrs[0] != prev { nbrs[0] } else { nbrs[1] };
        prev = cur;
        cycle.push(next);
    }
    cycle
}

/// Canonical coordinates for one (start, direction) choice: translate the
/// first vertex to the origin, map the first edge onto the positive x-axis,
/// fold the polygon into the upper half-plane, and pin the residual shear
/// using the last vertex.
fn normalize_traversal(verts: &[Vec<Int>], order: &[usize]) -> Vec<Vec<Int>> {
    let base = &verts[order[0]];
    let translated: Vec<Vec<Int>> = order.iter().map(|&i| vsub(&verts[i], base)).collect();
    let edge = &translated[1];
    let prim = crate::linalg::primitive(edge);
    let eg = prim[0].extended_gcd(&prim[1]);
    // rows of the unimodular map sending the primitive edge to (1, 0)
    let mut u = [
        [eg.x.clone(), eg.y.clone()],
        [-prim[1].clone(), prim[0].clone()],
    ];
    let apply = |u: &[[Int; 2]; 2], v: &Vec<Int>| {
        vec![
            &u[0][0] * &v[0] + &u[0][1] * &v[1],
            &u[1][0] * &v[0] + &u[1][1] * &v[1],
        ]
    };
    let mut mapped: Vec<Vec<Int>> = translated.iter().map(|v| apply(&u, v)).collect();
    if mapped.iter().any(|v| v[1].is_negative()) {
        u[1][0] = -u[1][0].clone();
        u[1][1] = -u[1][1].clone();
        mapped = translated.iter().map(|v| apply(&u, v)).collect();
    }
    let last = mapped.last().unwrap();
    assert!(last[1].is_positive(), "last traversal vertex must leave the first edge");
    let shear = last[0].div_floor(&last[1]);
    if !shear.is_zero() {
        for v in &mut mapped {
            let adj = &shear * &v[1];
            v[0] -= adj;
        }
    }
    mapped
}

fn classify_normal_form(form: &[Vec<Int>]) -> PolygonTag {
    let references: [(PolygonTag, &[&[i64]]); 5] = [
        (PolygonTag::UnimodularTriangle, &[&[0, 0], &[1, 0], &[0, 1]]),
        (PolygonTag::StandardSquare, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]),
        (PolygonTag::Rect1x2, &[&[0, 0], &[1, 0], &[0, 2], &[1, 2]]),
        (
            PolygonTag::Dp6Hexagon,
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1], &[-1, -1]],
        ),
        (
            PolygonTag::F1Quadrilateral,
            &[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]],
        ),
    ];
    for (tag, pts) in references {
        let reference = canonical_polygon_vertices(&LatticePolytope::hull_i64(2, pts));
        if reference == form {
            return tag;
        }
    }
    PolygonTag::Other
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use crate::{int, ivec, rat};

    fn lp(points: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::hull_i64(points[0].len(), points)
    }

    fn cube() -> LatticePolytope {
        let mut pts = Vec::new();
        for x in [-1i64, 1] {
            for y in [-1i64, 1] {
                for z in [-1i64, 1] {
                    pts.push(ivec(&[x, y, z]));
                }
            }
        }
        LatticePolytope::hull(3, &pts)
    }

    #[test]
    fn hull_drops_interior_and_duplicate_points() {
        let p = lp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 0]]);
        assert_eq!(p.vertex_count(), 4);
        let with_center = lp(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]]);
        assert_eq!(with_center.vertex_count(), 4);
        let with_edge_midpoint = lp(&[&[0, 0], &[2, 0], &[1, 0], &[0, 1]]);
        assert_eq!(with_edge_midpoint.vertex_count(), 3);
    }

    #[test]
    fn facet_count_of_cube() {
        let c = cube();
        assert_eq!(c.facets().unwrap().len(), 6);
        for h in c.facets().unwrap() {
            assert_eq!(h.rhs, -Rat::one());
        }
    }

    #[test]
    fn degenerate_input_is_flagged() {
        let seg = lp(&[&[0, 0], &[2, 2]]);
        assert!(!seg.is_full_dimensional());
        assert!(matches!(
            seg.facets(),
            Err(PolytopeError::Degenerate { affine_rank: 1, lattice_rank: 2 })
        ));
        assert_eq!(seg.hull_equations().len(), 1);
    }

    #[test]
    fn lattice_points_of_hexagon() {
        let hex = lp(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1], &[-1, -1]]);
        assert_eq!(hex.lattice_points().len(), 7);
        assert_eq!(hex.interior_lattice_points().unwrap(), alloc::vec![ivec(&[0, 0])]);
    }

    #[test]
    fn lattice_points_of_lower_dimensional_polytope() {
        let seg = lp(&[&[0, 0], &[2, 2]]);
        assert_eq!(seg.lattice_points().len(), 3);
    }

    #[test]
    fn volume_and_barycenter_basics() {
        let simplex = lp(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(simplex.normalized_volume().unwrap(), Rat::one());
        let seg = lp(&[&[0], &[1]]);
        assert_eq!(seg.barycenter().unwrap(), alloc::vec![rat(1, 2)]);
        let tri = lp(&[&[0, 0], &[1, 0], &[0, 2]]);
        assert_eq!(tri.barycenter().unwrap(), alloc::vec![rat(1, 3), rat(2, 3)]);
        assert_eq!(tri.normalized_volume().unwrap(), Rat::from(int(2)));
        assert_eq!(cube().normalized_volume().unwrap(), Rat::from(int(48)));
    }

    #[test]
    fn volume_is_invariant_under_unimodular_maps() {
        let hex = lp(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1], &[-1, -1]]);
        let shear = IntMatrix::from_i64_rows(&[&[1, 3], &[0, 1]]);
        let mapped_pts: Vec<Vec<Int>> = hex.vertices().iter().map(|v| shear.apply(v)).collect();
        let mapped = LatticePolytope::hull(2, &mapped_pts);
        assert_eq!(
            hex.normalized_volume().unwrap(),
            mapped.normalized_volume().unwrap()
        );
        assert_eq!(hex.normalized_volume().unwrap(), Rat::from(int(6)));
    }

    #[test]
    fn f_vector_of_cube_and_simplex() {
        assert_eq!(cube().f_vector().unwrap(), alloc::vec![8, 12, 6]);
        let simplex = lp(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(simplex.f_vector().unwrap(), alloc::vec![4, 6, 4]);
    }

    #[test]
    fn polar_of_simplex() {
        let p = lp(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]);
        let q = p.polar().unwrap().to_lattice().unwrap();
        let expected = lp(&[&[-1, -1, -1], &[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
        assert_eq!(q.vertices(), expected.vertices());
    }

    #[test]
    fn polar_involution_on_cube() {
        let c = cube();
        let polar = c.polar().unwrap();
        let cross = polar.to_lattice().unwrap();
        assert_eq!(cross.vertex_count(), 6);
        let back = polar.polar().unwrap().to_lattice().unwrap();
        assert_eq!(back.vertices(), c.vertices());
        assert!(c.is_reflexive());
        assert!(cross.is_reflexive());
    }

    #[test]
    fn polar_requires_interior_origin() {
        let shifted = lp(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(shifted.polar(), Err(PolytopeError::OriginNotInterior)));
        assert!(!shifted.is_reflexive());
    }

    #[test]
    fn reflexivity_of_weighted_projective_triangle() {
        // fan polytope of a weighted projective plane with weights (1,1,2)
        let p = lp(&[&[1, 0], &[0, 1], &[-1, -2]]);
        assert!(p.is_reflexive());
        let polar_nvol = p.polar().unwrap().normalized_volume().unwrap();
        assert_eq!(polar_nvol, Rat::from(int(8)));
    }

    #[test]
    fn centrally_symmetric_detection() {
        assert!(cube().is_centrally_symmetric());
        let simplex = lp(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert!(!simplex.is_centrally_symmetric());
    }

    #[test]
    fn from_halfspaces_square() {
        let hs = alloc::vec![
            Halfspace::new(ivec(&[1, 0]), Rat::zero()),
            Halfspace::new(ivec(&[-1, 0]), -Rat::one()),
            Halfspace::new(ivec(&[0, 1]), Rat::zero()),
            Halfspace::new(ivec(&[0, -1]), -Rat::one()),
        ];
        let p = RationalPolytope::from_halfspaces(2, &hs).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.normalized_volume().unwrap(), Rat::from(int(2)));
    }

    #[test]
    fn from_halfspaces_detects_unbounded_and_empty() {
        let half = alloc::vec![Halfspace::new(ivec(&[1, 0]), Rat::zero())];
        assert!(matches!(
            RationalPolytope::from_halfspaces(2, &half),
            Err(PolytopeError::Unbounded)
        ));
        let empty = alloc::vec![
            Halfspace::new(ivec(&[1, 0]), Rat::one()),
            Halfspace::new(ivec(&[-1, 0]), Rat::one()),
            Halfspace::new(ivec(&[0, 1]), Rat::zero()),
            Halfspace::new(ivec(&[0, -1]), -Rat::one()),
        ];
        assert!(matches!(
            RationalPolytope::from_halfspaces(2, &empty),
            Err(PolytopeError::EmptyRegion)
        ));
    }

    #[test]
    fn from_halfspaces_allows_lower_dimensional_regions() {
        let hs = alloc::vec![
            Halfspace::new(ivec(&[1, 0]), Rat::zero()),
            Halfspace::new(ivec(&[-1, 0]), Rat::zero()),
            Halfspace::new(ivec(&[0, 1]), Rat::zero()),
            Halfspace::new(ivec(&[0, -1]), -Rat::one()),
        ];
        let p = RationalPolytope::from_halfspaces(2, &hs).unwrap();
        assert_eq!(p.affine_rank(), 1);
        assert_eq!(p.vertices().len(), 2);
    }

    #[test]
    fn sublattice_polytope_preserves_lattice_data() {
        // rectangle on the plane x = 1, lattice-equivalent to [0,1] x [0,2]
        let face = lp(&[&[1, 0, -1], &[1, 0, 1], &[1, 1, -1], &[1, 1, 1]]);
        assert_eq!(face.affine_rank(), 2);
        let flat = face.sublattice_polytope();
        assert_eq!(flat.lattice_rank(), 2);
        assert!(flat.is_full_dimensional());
        assert_eq!(flat.normalized_volume().unwrap(), Rat::from(int(4)));
        assert_eq!(flat.lattice_points().len(), 6);
        let class = polygon_normal_form(&flat);
        assert_eq!(class.tag, PolygonTag::Rect1x2);
    }

    #[test]
    fn facet_interior_point_counts() {
        let tri = lp(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(tri.facet_interior_lattice_points().unwrap(), alloc::vec![0, 0, 0]);
        let big = lp(&[&[0, 0], &[3, 0], &[0, 3], &[3, 3]]);
        assert_eq!(big.facet_interior_lattice_points().unwrap(), alloc::vec![2, 2, 2, 2]);
    }

    #[test]
    fn polygon_classification() {
        let square = lp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(polygon_normal_form(&square).tag, PolygonTag::StandardSquare);
        // sheared square stays in the class
        let sheared = lp(&[&[0, 0], &[1, 3], &[1, 4], &[0, 1]]);
        assert_eq!(polygon_normal_form(&sheared).tag, PolygonTag::StandardSquare);
        let tri = lp(&[&[5, 5], &[6, 5], &[5, 6]]);
        assert_eq!(polygon_normal_form(&tri).tag, PolygonTag::UnimodularTriangle);
        let hex = lp(&[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]]);
        assert_eq!(polygon_normal_form(&hex).tag, PolygonTag::Dp6Hexagon);
        let f1 = lp(&[&[1, 0], &[1, 1], &[0, 1], &[-1, -1]]);
        assert_eq!(polygon_normal_form(&f1).tag, PolygonTag::F1Quadrilateral);
        let other = lp(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        assert_eq!(polygon_normal_form(&other).tag, PolygonTag::Other);
    }

    #[test]
    fn polygon_normal_form_is_a_class_invariant() {
        let hex = lp(&[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]]);
        let base = polygon_normal_form(&hex).normal_form;
        let maps = [
            IntMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]),
            IntMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]),
            IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]),
        ];
        for m in maps {
            let pts: Vec<Vec<Int>> = hex
                .vertices()
                .iter()
                .map(|v| crate::linalg::vadd(&m.apply(v), &ivec(&[7, -4])))
                .collect();
            let moved = LatticePolytope::hull(2, &pts);
            assert_eq!(polygon_normal_form(&moved).normal_form, base);
        }
    }

    #[test]
    fn automorphisms_of_the_projective_space_simplex() {
        let p = lp(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]);
        let auts = p.lattice_automorphisms().unwrap();
        assert_eq!(auts.order, 24);
        for g in &auts.elements {
            assert_eq!(g.det().abs(), int(1));
        }
        // generators generate: closure size equals the order
        assert!(auts.generators.len() <= 3);
    }

    #[test]
    fn automorphism_orders_of_weighted_plane_triangles() {
        // weights (1,2,3): all rays distinguishable, trivial group
        let p = lp(&[&[1, 0], &[0, 1], &[-2, -3]]);
        assert_eq!(p.lattice_automorphisms().unwrap().order, 1);
        // weights (1,1,2): the two weight-1 rays swap
        let q = lp(&[&[1, 0], &[0, 1], &[-1, -2]]);
        assert_eq!(q.lattice_automorphisms().unwrap().order, 2);
    }

    #[test]
    fn pick_identity_on_samples() {
        let polys = [
            lp(&[&[0, 0], &[1, 0], &[0, 1]]),
            lp(&[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]]),
            lp(&[&[0, 0], &[3, 0], &[0, 3], &[3, 3]]),
            lp(&[&[2, -1], &[-1, 2], &[-1, -1]]),
        ];
        for p in polys {
            let nvol = p.normalized_volume().unwrap();
            let interior = p.interior_lattice_points().unwrap().len() as i64;
            let boundary = p.boundary_lattice_points().unwrap().len() as i64;
            assert_eq!(nvol, Rat::from(int(2 * interior + boundary - 2)));
        }
    }
}
