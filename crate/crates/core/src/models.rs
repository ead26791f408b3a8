//! Ready-made systems, joins, and reference data for the worked examples:
//! binary and ternary symmetric powers, Segre and wedge joins, osculating
//! factors, and the implicit curves used throughout the test suite.
//!
//! Symmetric forms are identified with their monomial coefficient vectors
//! in descending lexicographic monomial order.

use num_complex::Complex64;

use crate::algebra::{LinearSlice, Polynomial, PolynomialSystem, Rng, Term};
use crate::error::Result;
use crate::varieties::{
    build_abstract_join, multi_indices, AbstractJoin, Factor, JoinMode, Parameterization,
    ProjectionSetup,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Coefficient vector (descending lexicographic) of a degree-`d` form given
/// by `(exponents, coefficient)` pairs.
pub fn sym_form(nvars: usize, d: u32, terms: &[(Vec<u32>, f64)]) -> Vec<Complex64> {
    let idx = multi_indices(nvars, d);
    let mut out = vec![c(0.0, 0.0); idx.len()];
    for (e, coeff) in terms {
        let pos = idx
            .iter()
            .position(|alpha| alpha == e)
            .expect("exponent of the stated degree");
        out[pos] += c(*coeff, 0.0);
    }
    out
}

/// Extract the coefficient functions of a polynomial expression living in a
/// combined `(x, params)` ring: the result maps parameters to the
/// coefficient vector over the degree-`d` monomials in the first `n_x`
/// variables.
pub fn coefficient_map(
    expr: &Polynomial,
    n_x: usize,
    n_params: usize,
    d: u32,
) -> Result<PolynomialSystem> {
    let idx = multi_indices(n_x, d);
    let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); idx.len()];
    for t in &expr.terms {
        let xexp: Vec<u32> = t.exponents[..n_x].to_vec();
        let pexp: Vec<u32> = t.exponents[n_x..].to_vec();
        let pos = idx
            .iter()
            .position(|alpha| alpha == &xexp)
            .expect("expression must be homogeneous of degree d in x");
        buckets[pos].push(Term::new(t.coeff, pexp));
    }
    let polys = buckets.into_iter().map(Polynomial::from_terms).collect();
    PolynomialSystem::new(n_params, polys)
}

/// Variable `i` of the combined ring as a polynomial.
fn var(total: usize, i: usize) -> Polynomial {
    let mut e = vec![0u32; total];
    e[i] = 1;
    Polynomial::from_terms(vec![Term::new(ONE, e)])
}

/// The map `q -> q^power` on degree-`base_deg` forms in `nvars` variables.
pub fn form_power_map(nvars: usize, base_deg: u32, power: u32) -> Result<Parameterization> {
    let base_idx = multi_indices(nvars, base_deg);
    let n_params = base_idx.len();
    let total = nvars + n_params;
    let q = Polynomial::from_terms(
        base_idx
            .iter()
            .enumerate()
            .map(|(i, alpha)| {
                let mut e = vec![0u32; total];
                e[..nvars].copy_from_slice(&{
                    let mut xe = vec![0u32; nvars];
                    xe.copy_from_slice(alpha);
                    xe
                });
                e[nvars + i] = 1;
                Term::new(ONE, e)
            })
            .collect(),
    );
    let expr = q.pow(power);
    Ok(Parameterization::custom(coefficient_map(
        &expr,
        nvars,
        n_params,
        base_deg * power,
    )?))
}

/// Join of `r` Veronese factors `v_d` on `n + 1` variables.
pub fn veronese_join(n: usize, d: u32, copies: usize, rng: &mut Rng) -> Result<AbstractJoin> {
    build_abstract_join(
        (0..copies)
            .map(|_| Factor::Param(Parameterization::veronese(n, d)))
            .collect(),
        JoinMode::AffineCone,
        rng,
    )
}

/// `sigma_r` of binary cubics: `r` copies of `v_3` on two variables.
pub fn binary_cubic_join(r: usize, rng: &mut Rng) -> Result<AbstractJoin> {
    veronese_join(1, 3, r, rng)
}

/// `x^2 y` as a point of the space of binary cubics.
pub fn x2y_point() -> Vec<Complex64> {
    vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
}

/// Start decomposition for the single-path border-rank-2 test of `x^2 y`:
/// `a = (1 + i, 1 - 2i)`, `b = (2 - i, 1 - i)`.
pub fn x2y_rank2_start() -> Vec<Complex64> {
    vec![c(1.0, 1.0), c(1.0, -2.0), c(2.0, -1.0), c(1.0, -1.0)]
}

/// The space curve `V(x1^2 - x2, x1^3 + x3)`.
pub fn space_curve_system() -> PolynomialSystem {
    let f1 = Polynomial::from_terms(vec![
        Term::new(ONE, vec![2, 0, 0]),
        Term::new(c(-1.0, 0.0), vec![0, 1, 0]),
    ]);
    let f2 = Polynomial::from_terms(vec![
        Term::new(ONE, vec![3, 0, 0]),
        Term::new(ONE, vec![0, 0, 1]),
    ]);
    PolynomialSystem::new(3, vec![f1, f2]).unwrap()
}

/// The exposition slice `2 x1 - 3 x2 - 5 x3 + 1 = 0`.
pub fn space_curve_slice_l() -> LinearSlice {
    LinearSlice::from_rows(
        vec![vec![c(2.0, 0.0), c(-3.0, 0.0), c(-5.0, 0.0)]],
        vec![c(-1.0, 0.0)],
        0,
    )
}

/// The structured slice `2 x1 - 3 x2 + 1 = 0` on the image coordinates.
pub fn space_curve_slice_m() -> LinearSlice {
    LinearSlice::from_rows(vec![vec![c(2.0, 0.0), c(-3.0, 0.0)]], vec![c(-1.0, 0.0)], 0)
}

/// The circle incidence `{x (1 + s^2) = 2s, y (1 + s^2) = 1 - s^2}`
/// projecting onto the unit circle.
pub fn circle_incidence() -> ProjectionSetup {
    let f1 = Polynomial::from_terms(vec![
        Term::new(ONE, vec![1, 0, 2]),
        Term::new(ONE, vec![1, 0, 0]),
        Term::new(c(-2.0, 0.0), vec![0, 0, 1]),
    ]);
    let f2 = Polynomial::from_terms(vec![
        Term::new(ONE, vec![0, 1, 2]),
        Term::new(ONE, vec![0, 1, 0]),
        Term::new(ONE, vec![0, 0, 2]),
        Term::new(c(-1.0, 0.0), vec![0, 0, 0]),
    ]);
    ProjectionSetup {
        system: PolynomialSystem::new(3, vec![f1, f2]).unwrap(),
        proj: vec![0, 1],
        dim_total: 1,
    }
}

/// The cusp incidence `{x s^2 = 1, y s^3 = 1}` projecting onto the cuspidal
/// cubic `x^3 = y^2`.
pub fn cusp_incidence() -> ProjectionSetup {
    let f1 = Polynomial::from_terms(vec![
        Term::new(ONE, vec![1, 0, 2]),
        Term::new(c(-1.0, 0.0), vec![0, 0, 0]),
    ]);
    let f2 = Polynomial::from_terms(vec![
        Term::new(ONE, vec![0, 1, 3]),
        Term::new(c(-1.0, 0.0), vec![0, 0, 0]),
    ]);
    ProjectionSetup {
        system: PolynomialSystem::new(3, vec![f1, f2]).unwrap(),
        proj: vec![0, 1],
        dim_total: 1,
    }
}

/// The rational normal cubic in coordinates for the scaled monomial basis
/// `(x^3, 3 x^2 y, 3 x y^2, y^3)`: the cube of a linear form has the
/// binomial coordinate vector `(a^3, a^2 b, a b^2, b^3)`. The
/// tangential-boundary reference data live in this convention, where the
/// tangent developable is cut by the classical discriminant.
pub fn rnc_cubic_binomial() -> Parameterization {
    let polys = [[3u32, 0], [2, 1], [1, 2], [0, 3]]
        .iter()
        .map(|&[i, j]| {
            Polynomial::from_terms(vec![Term::new(ONE, vec![i, j])])
        })
        .collect();
    Parameterization::custom(PolynomialSystem::new(2, polys).unwrap())
}

/// Rank-`r` join of binomial rational normal cubics.
pub fn binomial_cubic_join(r: usize, rng: &mut Rng) -> Result<AbstractJoin> {
    build_abstract_join(
        (0..r)
            .map(|_| Factor::Param(rnc_cubic_binomial()))
            .collect(),
        JoinMode::AffineCone,
        rng,
    )
}

/// The exposition line used for the tangential-quartic boundary run:
/// `P1 + 3 P4 = 2`, `P2 - 4 P4 = -3`, `P3 - 2 P4 = 4`.
pub fn tangential_section() -> LinearSlice {
    LinearSlice::from_rows(
        vec![
            vec![ONE, c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)],
            vec![c(0.0, 0.0), ONE, c(0.0, 0.0), c(-4.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), ONE, c(-2.0, 0.0)],
        ],
        vec![c(2.0, 0.0), c(-3.0, 0.0), c(4.0, 0.0)],
        0,
    )
}

/// Defining quartic of the tangential variety of the rational normal cubic:
/// `P1^2 P4^2 - 6 P1 P2 P3 P4 + 4 P1 P3^3 + 4 P2^3 P4 - 3 P2^2 P3^2`.
pub fn tangential_quartic_value(p: &[Complex64]) -> Complex64 {
    let (p1, p2, p3, p4) = (p[0], p[1], p[2], p[3]);
    p1 * p1 * p4 * p4 - p1 * p2 * p3 * p4 * 6.0 + p1 * p3 * p3 * p3 * 4.0
        + p2 * p2 * p2 * p4 * 4.0
        - p2 * p2 * p3 * p3 * 3.0
}

/// Relative residual of the tangential quartic: the value normalized by
/// the sum of its monomial magnitudes (the conditioning scale of the
/// evaluation).
pub fn tangential_quartic_residual(p: &[Complex64]) -> f64 {
    let (p1, p2, p3, p4) = (p[0], p[1], p[2], p[3]);
    let scale = (p1 * p1 * p4 * p4).norm()
        + (p1 * p2 * p3 * p4 * 6.0).norm()
        + (p1 * p3 * p3 * p3 * 4.0).norm()
        + (p2 * p2 * p2 * p4 * 4.0).norm()
        + (p2 * p2 * p3 * p3 * 3.0).norm();
    tangential_quartic_value(p).norm() / (1.0 + scale)
}

/// `sigma_r` of the Segre product of three projective lines in `C^8`.
pub fn segre222_join(r: usize, rng: &mut Rng) -> Result<AbstractJoin> {
    build_abstract_join(
        (0..r)
            .map(|_| Factor::Param(Parameterization::segre(vec![2, 2, 2])))
            .collect(),
        JoinMode::AffineCone,
        rng,
    )
}

/// The complex-multiplication bilinear map `(a, b) x (c, d) ->
/// (ac - bd, ad + bc)` as a tensor in `C^2 ⊗ C^2 ⊗ C^2`, entries in
/// lexicographic order with the third index enumerating outputs.
pub fn complex_mult_tensor() -> Vec<Complex64> {
    let mut t = vec![c(0.0, 0.0); 8];
    // T[i][j][k]: out_k = sum T_ijk u_i v_j; index = 4i + 2j + k
    t[0] = ONE; // u1 v1 -> out1 (ac)
    t[3] = ONE; // u1 v2 -> out2 (ad)
    t[5] = ONE; // u2 v1 -> out2 (bc)
    t[6] = -ONE; // u2 v2 -> out1 (-bd)
    t
}

/// Mella's ternary quintic with a rank-7 decomposition into fifth powers.
pub fn ternary_quintic() -> Vec<Complex64> {
    sym_form(
        3,
        5,
        &[
            (vec![5, 0, 0], 17051.0),
            (vec![4, 1, 0], 41500.0),
            (vec![3, 2, 0], 720.0),
            (vec![2, 3, 0], 11360.0),
            (vec![1, 4, 0], 95010.0),
            (vec![0, 5, 0], 19345.0),
            (vec![4, 0, 1], -18095.0),
            (vec![3, 1, 1], -281420.0),
            (vec![2, 2, 1], 427290.0),
            (vec![1, 3, 1], -367940.0),
            (vec![0, 4, 1], 73860.0),
            (vec![3, 0, 2], 243470.0),
            (vec![2, 1, 2], -533370.0),
            (vec![1, 2, 2], 518670.0),
            (vec![0, 3, 2], -273140.0),
            (vec![2, 0, 3], 156350.0),
            (vec![1, 1, 3], -323300.0),
            (vec![0, 2, 3], 383760.0),
            (vec![1, 0, 4], 80245.0),
            (vec![0, 1, 4], -277060.0),
            (vec![0, 0, 5], 84411.0),
        ],
    )
}

/// The seven linear forms whose fifth powers sum to the ternary quintic,
/// written with their fifth-root scalings absorbed.
pub fn ternary_quintic_forms() -> Vec<[f64; 3]> {
    vec![
        [3.0, 8.0, -2.0],
        [-8.0, 6.0, -1.0],
        [7.0, -7.0, 7.0],
        [-2.0, -4.0, 8.0],
        [8.0, 0.0, -4.0],
        [2.0, -3.0, 5.0],
        [1.0, -5.0, 8.0],
    ]
}

/// A degree-7 ternary form with a known 12-power decomposition, returned as
/// `(coefficients, fiber point)` for the 12-fold Veronese join; the weights
/// are absorbed into the linear forms by real seventh roots.
pub fn septic_with_decomposition() -> (Vec<Complex64>, Vec<Complex64>) {
    let data: [(f64, f64, f64); 12] = [
        (91.0, -3.5, 4.5),
        (58.0, -1.5, -4.0 / 3.0),
        (-21.0, 2.0, -4.5),
        (33.0, 3.0, -1.0),
        (54.0, -3.0, -5.0 / 3.0),
        (88.0, -3.0, -10.0 / 3.0),
        (-37.0, -5.0, 1.0),
        (93.0, -1.0, -8.0),
        (12.0, 4.5, 10.0),
        (-89.0, -5.0, -0.5),
        (-99.0, -1.0, -3.0),
        (-22.0, -1.0 / 3.0, 4.0),
    ];
    let v7 = Parameterization::veronese(2, 7);
    let mut coeffs = vec![c(0.0, 0.0); 36];
    let mut fiber = Vec::with_capacity(36);
    for &(lam, a1, a2) in &data {
        let mu = lam.signum() * lam.abs().powf(1.0 / 7.0);
        let block = [c(mu, 0.0), c(mu * a1, 0.0), c(mu * a2, 0.0)];
        let img = v7.eval(&block).unwrap();
        for (o, v) in coeffs.iter_mut().zip(&img) {
            *o += v;
        }
        fiber.extend_from_slice(&block);
    }
    (coeffs, fiber)
}

/// The osculating join of cubics `C = Q L_1 + L_2^3` with `L_i` normalized
/// to leading coefficient one: a custom two-factor join filling `Sym^3 C^3`.
pub fn osculating_cubic_join(rng: &mut Rng) -> Result<AbstractJoin> {
    // factor 1: (q, a) -> Q(x) * (x0 + a1 x1 + a2 x2), 8 parameters
    let n_x = 3;
    let quad_idx = multi_indices(n_x, 2);
    let total1 = n_x + 8;
    let q_poly = Polynomial::from_terms(
        quad_idx
            .iter()
            .enumerate()
            .map(|(i, alpha)| {
                let mut e = vec![0u32; total1];
                e[..n_x].copy_from_slice(alpha);
                e[n_x + i] = 1;
                Term::new(ONE, e)
            })
            .collect(),
    );
    let l1 = var(total1, 0).add(
        &var(total1, 1)
            .mul(&var(total1, n_x + 6))
            .add(&var(total1, 2).mul(&var(total1, n_x + 7))),
    );
    let factor1 = Parameterization::custom(coefficient_map(&q_poly.mul(&l1), n_x, 8, 3)?);

    // factor 2: a -> (x0 + a1 x1 + a2 x2)^3, 2 parameters
    let total2 = n_x + 2;
    let l2 = var(total2, 0).add(
        &var(total2, 1)
            .mul(&var(total2, n_x))
            .add(&var(total2, 2).mul(&var(total2, n_x + 1))),
    );
    let factor2 = Parameterization::custom(coefficient_map(&l2.pow(3), n_x, 2, 3)?);

    build_abstract_join(
        vec![Factor::Param(factor1), Factor::Param(factor2)],
        JoinMode::AffineCone,
        rng,
    )
}

/// `x0^3 + x1^3 + x2^3`.
pub fn fermat_cubic() -> Vec<Complex64> {
    sym_form(
        3,
        3,
        &[(vec![3, 0, 0], 1.0), (vec![0, 3, 0], 1.0), (vec![0, 0, 3], 1.0)],
    )
}

/// `4 x0^2 x2 + x1^2 x2 - 8 x0^3`, the witch-of-Agnesi cubic.
pub fn witch_of_agnesi_cubic() -> Vec<Complex64> {
    sym_form(
        3,
        3,
        &[
            (vec![2, 0, 1], 4.0),
            (vec![0, 2, 1], 1.0),
            (vec![3, 0, 0], -8.0),
        ],
    )
}

/// The start decomposition used for the osculating single-path runs.
pub fn osculating_start() -> Vec<Complex64> {
    // Q* = x0^2 + (1+i) x0 x1 + 3 x0 x2 - 2 x1^2 + (3-i) x1 x2 + 2 x2^2,
    // L1* = x0 + 2 x1 + 3 x2, L2* = x0 - (3+i) x1 + 5 x2
    vec![
        c(1.0, 0.0),
        c(1.0, 1.0),
        c(3.0, 0.0),
        c(-2.0, 0.0),
        c(3.0, -1.0),
        c(2.0, 0.0),
        c(2.0, 0.0),
        c(3.0, 0.0),
        c(-3.0, -1.0),
        c(5.0, 0.0),
    ]
}

/// Join of `r` squared quadrics and `s` fourth powers in `Sym^4 C^4`.
pub fn waring_rs_join(r: usize, s: usize, rng: &mut Rng) -> Result<AbstractJoin> {
    let mut factors = Vec::with_capacity(r + s);
    for _ in 0..r {
        factors.push(Factor::Param(form_power_map(4, 2, 2)?));
    }
    for _ in 0..s {
        factors.push(Factor::Param(Parameterization::veronese(3, 4)));
    }
    build_abstract_join(factors, JoinMode::AffineCone, rng)
}

/// The `(r, s)` grid of the quartic Waring-type joins with their reference
/// expected and actual dimensions.
pub fn waring_rs_table() -> Vec<(usize, usize, usize, usize)> {
    // (r, s, expected, actual)
    vec![
        (0, 1, 4, 4),
        (0, 2, 8, 8),
        (0, 3, 12, 12),
        (0, 4, 16, 16),
        (0, 5, 20, 20),
        (0, 6, 24, 24),
        (0, 7, 28, 28),
        (0, 8, 32, 32),
        (0, 9, 35, 34),
        (0, 10, 35, 35),
        (1, 0, 10, 10),
        (1, 1, 14, 14),
        (1, 2, 18, 18),
        (1, 3, 22, 22),
        (1, 4, 26, 26),
        (1, 5, 30, 30),
        (1, 6, 34, 34),
        (1, 7, 35, 35),
        (2, 0, 20, 19),
        (2, 1, 24, 23),
        (2, 2, 28, 27),
        (2, 3, 32, 31),
        (2, 4, 35, 35),
        (3, 0, 30, 27),
        (3, 1, 34, 31),
        (3, 2, 35, 35),
        (4, 0, 35, 34),
        (4, 1, 35, 35),
        (5, 0, 35, 35),
    ]
}

/// A random complete-intersection curve cone in `C^5` cut by three
/// homogeneous quadrics.
pub fn random_quadric_curve(rng: &mut Rng) -> PolynomialSystem {
    let idx = multi_indices(5, 2);
    let polys = (0..3)
        .map(|_| {
            Polynomial::from_terms(
                idx.iter()
                    .map(|alpha| Term::new(rng.unit_complex(), alpha.clone()))
                    .collect(),
            )
        })
        .collect();
    PolynomialSystem::new(5, polys).unwrap()
}

/// Abstract join of two implicit curve cones in `C^5`.
pub fn implicit_curve_join(
    c1: &PolynomialSystem,
    c2: &PolynomialSystem,
    rng: &mut Rng,
) -> Result<AbstractJoin> {
    build_abstract_join(
        vec![
            Factor::Implicit {
                system: c1.clone(),
                dim: 2,
            },
            Factor::Implicit {
                system: c2.clone(),
                dim: 2,
            },
        ],
        JoinMode::AffineCone,
        rng,
    )
}

/// The 32-equation projection setup whose image dimension certifies the
/// claw-tensor count: products of three bilinear blocks summed over two
/// branches, projected to the 32 structured coordinates.
pub fn claw_setup() -> ProjectionSetup {
    // z_(h,i,j,k,l,m) with i + k + m even; variables: 32 z then 24 x
    // x blocks: x[gamma][delta] in C^4 indexed by (alpha, beta)
    let zidx: Vec<[usize; 6]> = {
        let mut v = Vec::new();
        for h in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            for m in 0..2 {
                                if (i + k + m) % 2 == 0 {
                                    v.push([h, i, j, k, l, m]);
                                }
                            }
                        }
                    }
                }
            }
        }
        v
    };
    assert_eq!(zidx.len(), 32);
    let total = 32 + 24;
    let xvar = |gamma: usize, delta: usize, alpha: usize, beta: usize| -> usize {
        32 + gamma * 12 + delta * 4 + alpha * 2 + beta
    };
    let polys = zidx
        .iter()
        .enumerate()
        .map(|(zi, &[h, i, j, k, l, m])| {
            let mut terms = Vec::new();
            for gamma in 0..2 {
                let mut e = vec![0u32; total];
                e[xvar(gamma, 0, h, i)] += 1;
                e[xvar(gamma, 1, j, k)] += 1;
                e[xvar(gamma, 2, l, m)] += 1;
                terms.push(Term::new(ONE, e));
            }
            let mut ez = vec![0u32; total];
            ez[zi] = 1;
            terms.push(Term::new(-ONE, ez));
            Polynomial::from_terms(terms)
        })
        .collect();
    ProjectionSetup {
        system: PolynomialSystem::new(total, polys).unwrap(),
        proj: (0..32).collect(),
        dim_total: 24,
    }
}

/// A point of the claw incidence from random bilinear blocks.
pub fn claw_sample(rng: &mut Rng) -> Vec<Complex64> {
    let setup = claw_setup();
    let x = rng.unit_complex_vec(24);
    let mut point = vec![c(0.0, 0.0); 56];
    point[32..].copy_from_slice(&x);
    // z determined by the defining rows: z_i = sum of the two products
    let sys = &setup.system;
    for (zi, row) in sys.polys.iter().enumerate() {
        let mut val = c(0.0, 0.0);
        for t in &row.terms {
            if t.exponents[zi] == 1 && t.degree() == 1 {
                continue; // the -z term
            }
            let mut m = t.coeff;
            for (v, &e) in t.exponents.iter().enumerate() {
                for _ in 0..e {
                    m *= point[v];
                }
            }
            val += m;
        }
        point[zi] = val;
    }
    point
}

/// The rank-3 fiber system of `x^2 y`: summands `v_3(a) + v_3(b) + v_3(c)`
/// matching the coefficient vector of `x^2 y`.
pub fn x2y_rank3_fiber_system(rng: &mut Rng) -> Result<(AbstractJoin, PolynomialSystem)> {
    let join = binary_cubic_join(3, rng)?;
    let f = join.fiber_system(&x2y_point())?;
    Ok((join, f))
}

/// Distance centers for the real-rank run on `x^2 y`:
/// `alpha = (1, 2)`, `beta = (-2, 1)`, `gamma = (1, -1)`.
pub fn x2y_real_center() -> Vec<f64> {
    vec![1.0, 2.0, -2.0, 1.0, 1.0, -1.0]
}

/// The minimal-distance real decomposition of `x^2 y` from the reference
/// center, as three linear-form coefficient pairs.
pub fn x2y_min_dist_forms() -> Vec<[f64; 2]> {
    vec![[0.721, 0.2849], [-1.429, 1.101], [1.365, -1.107]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_forms_reconstruct_the_quintic() {
        let v5 = Parameterization::veronese(2, 5);
        let t = ternary_quintic();
        let mut acc = vec![c(0.0, 0.0); 21];
        for form in ternary_quintic_forms() {
            let img = v5
                .eval(&[c(form[0], 0.0), c(form[1], 0.0), c(form[2], 0.0)])
                .unwrap();
            for (a, v) in acc.iter_mut().zip(&img) {
                *a += v;
            }
        }
        for (a, b) in acc.iter().zip(&t) {
            assert!(
                (a - b).norm() < 1e-6 * (1.0 + b.norm()),
                "coefficient mismatch {a} vs {b}"
            );
        }
    }

    #[test]
    fn septic_fiber_point_is_exact() {
        let mut rng = Rng::from_seed(73);
        let join = veronese_join(2, 7, 12, &mut rng).unwrap();
        let (coeffs, fiber) = septic_with_decomposition();
        let img = join.image_of_fiber_point(&fiber).unwrap();
        for (a, b) in img.iter().zip(&coeffs) {
            assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn osculating_join_shape() {
        let mut rng = Rng::from_seed(79);
        let join = osculating_cubic_join(&mut rng).unwrap();
        assert_eq!(join.ambient_dim, 10);
        assert_eq!(join.dim_total, 10);
        // the start decomposition expands to an exact incidence point
        let start = osculating_start();
        let img = join.image_of_fiber_point(&start).unwrap();
        let f = join.fiber_system(&img).unwrap();
        assert!(f.residual(&start).unwrap() < 1e-10);
    }

    #[test]
    fn claw_sample_is_exact() {
        let mut rng = Rng::from_seed(83);
        let setup = claw_setup();
        let p = claw_sample(&mut rng);
        assert!(setup.system.residual(&p).unwrap() < 1e-12);
    }

    #[test]
    fn form_power_map_squares_quadrics() {
        // (x0^2)^2 = x0^4: the map at q = e_(2,0,0,0) has a 1 in the x0^4 slot
        let m = form_power_map(4, 2, 2).unwrap();
        let mut q = vec![c(0.0, 0.0); 10];
        q[0] = ONE; // descending lex puts x0^2 first
        let out = m.eval(&q).unwrap();
        assert_eq!(out.len(), 35);
        assert!((out[0] - ONE).norm() < 1e-14);
        assert!(out[1..].iter().all(|v| v.norm() < 1e-14));
    }

    #[test]
    fn complex_mult_tensor_has_gauss_rank_three_over_r() {
        // sanity: the Gauss decomposition reconstructs T with 3 real summands
        let t = complex_mult_tensor();
        let seg = Parameterization::segre(vec![2, 2, 2]);
        // (a+b) c (out coefficients 1, 1), -b (c+d) (1, -1)... expressed as
        // u (x-block), v (y-block), w (out-block) triples:
        let summands: [[f64; 6]; 3] = [
            // u = (1,1), v = (1,0), w = (1,1): (a+b) c in both outputs
            [1.0, 1.0, 1.0, 0.0, 1.0, 1.0],
            // u = (0,1), v = (1,1), w = (-1,0): -b (c+d) in output 1
            [0.0, 1.0, 1.0, 1.0, -1.0, 0.0],
            // u = (1,0), v = (-1,1), w = (0,1): a (d-c) in output 2
            [1.0, 0.0, -1.0, 1.0, 0.0, 1.0],
        ];
        let mut acc = vec![c(0.0, 0.0); 8];
        for s in summands {
            let params: Vec<Complex64> = s.iter().map(|&r| c(r, 0.0)).collect();
            let img = seg.eval(&params).unwrap();
            for (a, v) in acc.iter_mut().zip(&img) {
                *a += v;
            }
        }
        for (a, b) in acc.iter().zip(&t) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }
}
