//! Invariants of toric Fano varieties read off a Fano polytope: anticanonical
//! degree, K-polystability, Demazure roots and automorphism structure, Betti
//! numbers of the associated 3-fold, the anticanonical embedding, and degree
//! bookkeeping for products.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::fan::{picard_rank, Fan, FanError};
use crate::linalg::{int_rows_rank, int_solve, integer_kernel, rat_solve, vdot, IntMatrix};
use crate::poly::{toric_ideal, GrobnerError, Polynomial, StepBudget};
use crate::polytope::{LatticeAutomorphisms, LatticePolytope, PolytopeError};
use crate::{Int, Rat};

/// Anticanonical degree of the toric Fano variety of the face fan of `p`:
/// the normalized volume of the polar polytope.
pub fn anticanonical_degree(p: &LatticePolytope) -> Result<Rat, PolytopeError> {
    p.polar()?.normalized_volume()
}

/// Exact K-polystability test: the barycenter of the polar polytope is the
/// origin. The criterion is stated for reflexive polytopes but holds for any
/// Fano polytope, because passing to the polarisation by a Cartier multiple
/// of the anticanonical divisor rescales the polar without moving its
/// barycenter away from or onto the origin.
pub fn is_k_polystable(p: &LatticePolytope) -> Result<bool, PolytopeError> {
    let barycenter = p.polar()?.barycenter()?;
    Ok(barycenter.iter().all(Rat::is_zero))
}

/// Demazure roots of the face fan of a Fano polytope: characters pairing to
/// -1 with exactly one vertex and nonnegatively with every other vertex.
/// Such a character pairs to at least -1 with every vertex, so it is a
/// lattice point of the polar polytope; that bounds the search space.
pub fn demazure_roots(p: &LatticePolytope) -> Result<Vec<Vec<Int>>, PolytopeError> {
    let polar = p.polar()?;
    let roots = polar
        .lattice_points()
        .into_iter()
        .filter(|m| {
            let mut minus_ones = 0usize;
            for v in p.vertices() {
                let pairing = vdot(m, v);
                if pairing == -Int::one() {
                    minus_ones += 1;
                } else if pairing.is_negative() {
                    return false;
                }
            }
            minus_ones == 1
        })
        .collect();
    Ok(roots)
}

/// Automorphism data of a toric Fano variety: the torus, the Demazure roots
/// measuring extra infinitesimal automorphisms, and the finite symmetry group
/// of the polytope. When there are no roots the automorphism group is the
/// semidirect product of the torus with the polytope symmetries.
#[derive(Clone, Debug)]
pub struct AutStructure {
    pub torus_rank: usize,
    pub roots: Vec<Vec<Int>>,
    pub polytope_symmetries: LatticeAutomorphisms,
    /// True exactly when `roots` is empty, in which case the group splits as
    /// torus extended by the polytope symmetries.
    pub split: bool,
}

pub fn aut_structure(p: &LatticePolytope) -> Result<AutStructure, PolytopeError> {
    let roots = demazure_roots(p)?;
    let polytope_symmetries = p.lattice_automorphisms()?;
    let split = roots.is_empty();
    Ok(AutStructure { torus_rank: p.lattice_rank(), roots, polytope_symmetries, split })
}

/// Betti numbers of a complete toric 3-fold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiProfile {
    /// `b[k]` is the k-th Betti number, k = 0..6.
    pub b: [i64; 7],
    pub euler_characteristic: i64,
}

/// Betti numbers of the complete toric 3-fold of `fan`, from the cone counts
/// and the Picard rank: b2 = rank Pic, b3 = rank Pic - d2 + 2 d1 - 3,
/// b4 = d1 - 3, and the Euler characteristic equals d3.
pub fn betti_3fold(fan: &Fan) -> Result<BettiProfile, FanError> {
    assert_eq!(fan.ambient_rank(), 3, "Betti profile is defined for 3-dimensional fans");
    let pic = picard_rank(fan)? as i64;
    let d1 = fan.ray_count() as i64;
    let d2 = fan.wall_count() as i64;
    let d3 = fan.max_cone_count() as i64;
    let b = [1, 0, pic, pic - d2 + 2 * d1 - 3, d1 - 3, 0, 1];
    Ok(BettiProfile { b, euler_characteristic: d3 })
}

/// The anticanonical model of the toric Fano variety with moment polytope
/// `Q`: one projective coordinate per lattice point of `Q`, cut out by the
/// toric ideal of the height-one point configuration whenever the section
/// ring is generated in degree one.
#[derive(Clone, Debug)]
pub struct AnticanonicalPresentation {
    /// Lattice points of the moment polytope, in sorted order; coordinate i
    /// of the ambient projective space corresponds to `generators[i]`.
    pub generators: Vec<Vec<Int>>,
    /// Whether every lattice point of the doubled polytope is a sum of two
    /// generators. When false no ideal is claimed.
    pub generated_in_degree_one: bool,
    /// Reduced Groebner basis of the ideal of the embedding; `None` when the
    /// ring is not generated in degree one.
    pub ideal: Option<Vec<Polynomial>>,
}

pub fn anticanonical_presentation(
    moment: &LatticePolytope,
    budget: &mut StepBudget,
) -> Result<AnticanonicalPresentation, GrobnerError> {
    let generators = moment.lattice_points();
    let rank = moment.lattice_rank();
    let doubled_vertices: Vec<Vec<Int>> = moment
        .vertices()
        .iter()
        .map(|v| v.iter().map(|c| c * Int::from(2)).collect())
        .collect();
    let doubled = LatticePolytope::hull(rank, &doubled_vertices);
    let mut pair_sums: BTreeSet<Vec<Int>> = BTreeSet::new();
    for a in &generators {
        for b in &generators {
            pair_sums.insert(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    let generated_in_degree_one =
        doubled.lattice_points().iter().all(|q| pair_sums.contains(q));
    let ideal = if generated_in_degree_one {
        let height_one: Vec<Vec<Int>> = generators
            .iter()
            .map(|q| {
                let mut v = q.clone();
                v.push(Int::one());
                v
            })
            .collect();
        Some(toric_ideal(&height_one, budget)?)
    } else {
        None
    };
    Ok(AnticanonicalPresentation { generators, generated_in_degree_one, ideal })
}

/// Anticanonical degree of m-dimensional projective space, `(m+1)^m`.
pub fn projective_space_degree(dim: usize) -> Rat {
    let base = Int::from(dim as i64 + 1);
    Rat::from_integer(num_traits::pow(base, dim))
}

/// Anticanonical degree of a product of two Fano varieties: the binomial
/// coefficient of the dimension split times the two factor degrees.
pub fn product_anticanonical_degree(
    degree_a: &Rat,
    dim_a: usize,
    degree_b: &Rat,
    dim_b: usize,
) -> Rat {
    let choose = binomial(Int::from((dim_a + dim_b) as i64), Int::from(dim_a as i64));
    Rat::from_integer(choose) * degree_a * degree_b
}

/// Degree of `X x P^(n-k)` for a Fano factor of degree `degree` and
/// dimension `k`, inside total dimension `n`.
pub fn product_with_projective_space_degree(
    total_dim: usize,
    degree: &Rat,
    dim: usize,
) -> Rat {
    assert!(dim <= total_dim, "factor dimension exceeds total dimension");
    let complement = total_dim - dim;
    product_anticanonical_degree(degree, dim, &projective_space_degree(complement), complement)
}

/// Whether the origin lies in the relative interior of the convex hull of
/// the given characters. This is the genericity test for polystability of a
/// linear torus action with this weight set.
pub fn weight_polytope_generic_polystable(degrees: &[Vec<Int>]) -> bool {
    if degrees.is_empty() {
        return false;
    }
    let dim = degrees[0].len();
    if degrees.iter().all(|d| d.iter().all(Int::is_zero)) {
        return true;
    }
    // the affine hull must contain the origin: some affine combination of
    // the degrees vanishes
    let mut rows: Vec<Vec<Rat>> = (0..dim)
        .map(|i| degrees.iter().map(|d| Rat::from_integer(d[i].clone())).collect())
        .collect();
    rows.push(degrees.iter().map(|_| Rat::one()).collect());
    let mut rhs = alloc::vec![Rat::zero(); dim];
    rhs.push(Rat::one());
    if rat_solve(&rows, &rhs).is_none() {
        return false;
    }
    // the affine hull is then the linear span; test interiority there
    let span_rank = int_rows_rank(degrees);
    let local: Vec<Vec<Int>> = if span_rank == dim {
        degrees.to_vec()
    } else {
        let equations = integer_kernel(&IntMatrix::from_rows(degrees.to_vec()));
        let basis = integer_kernel(&IntMatrix::from_rows(equations));
        let basis_t = IntMatrix::from_rows(basis).transpose();
        degrees
            .iter()
            .map(|d| int_solve(&basis_t, d).expect("saturated basis spans the weight span"))
            .collect()
    };
    LatticePolytope::hull(span_rank, &local).origin_is_interior()
}
