//! Model parameterizations, abstract joins, image dimensions, and
//! witness / pseudowitness set assembly.
//!
//! Points of a symmetric power are identified with plain monomial
//! coefficient vectors in descending lexicographic monomial order, so the
//! Veronese map carries multinomial coefficients: `v_3(a) = (a_1^3,
//! 3 a_1^2 a_2, 3 a_1 a_2^2, a_2^3)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{LinearSlice, Polynomial, PolynomialSystem, Rng, Term};
use crate::error::{CoreError, Result};
use crate::linalg;
use crate::solver::{self, SolutionSet};
use crate::tracker::TrackOptions;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Degree-`d` exponent vectors over `nvars` variables, descending
/// lexicographic.
pub fn multi_indices(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, d: u32, out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>) {
        if nvars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars - 1, d - e, out, prefix);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut out, &mut Vec::new());
    out
}

pub fn multinomial(d: u32, alpha: &[u32]) -> f64 {
    let mut num = 1.0f64;
    let mut k = 0u32;
    for &a in alpha {
        for j in 1..=a {
            k += 1;
            num *= k as f64 / j as f64;
        }
    }
    debug_assert_eq!(k, d);
    num
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub enum ParamKind {
    /// `v_d : C^(n+1) -> C^(binom(n+d, d))`, coefficient vector of a d-th
    /// power of a linear form.
    Veronese { n: usize, d: u32 },
    /// Outer product of `k` vectors, ambient `prod(dims)`.
    Segre { dims: Vec<usize> },
    /// Pluecker coordinates of `v_1 ∧ ... ∧ v_k` for `v_i` in `C^n`.
    Wedge { k: usize, n: usize },
    /// User-supplied polynomial map `a -> phi(a)`.
    Custom { map: PolynomialSystem },
}

/// A polynomial parameterization of (the cone over) one join factor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Parameterization {
    pub kind: ParamKind,
    pub param_dim: usize,
    pub ambient_dim: usize,
    #[serde(skip)]
    map: std::sync::OnceLock<PolynomialSystem>,
}

impl PartialEq for Parameterization {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Parameterization {
    pub fn veronese(n: usize, d: u32) -> Self {
        let ambient = multi_indices(n + 1, d).len();
        Parameterization {
            kind: ParamKind::Veronese { n, d },
            param_dim: n + 1,
            ambient_dim: ambient,
            map: std::sync::OnceLock::new(),
        }
    }

    pub fn segre(dims: Vec<usize>) -> Self {
        let ambient = dims.iter().product();
        let param: usize = dims.iter().sum();
        Parameterization {
            kind: ParamKind::Segre { dims },
            param_dim: param,
            ambient_dim: ambient,
            map: std::sync::OnceLock::new(),
        }
    }

    pub fn wedge(k: usize, n: usize) -> Self {
        let ambient = combinations(n, k).len();
        Parameterization {
            kind: ParamKind::Wedge { k, n },
            param_dim: k * n,
            ambient_dim: ambient,
            map: std::sync::OnceLock::new(),
        }
    }

    pub fn custom(map: PolynomialSystem) -> Self {
        Parameterization {
            param_dim: map.num_vars,
            ambient_dim: map.len(),
            kind: ParamKind::Custom { map },
            map: std::sync::OnceLock::new(),
        }
    }

    /// The coordinate functions as a polynomial system in the parameters.
    pub fn map(&self) -> &PolynomialSystem {
        self.map.get_or_init(|| match &self.kind {
            ParamKind::Veronese { n, d } => veronese_map(*n, *d),
            ParamKind::Segre { dims } => segre_map(dims),
            ParamKind::Wedge { k, n } => wedge_map(*k, *n),
            ParamKind::Custom { map } => map.clone(),
        })
    }

    pub fn eval(&self, params: &[Complex64]) -> Result<Vec<Complex64>> {
        self.map().evaluate(params)
    }

    /// Dimension of the cone over the image: numerical rank of the
    /// differential at a random parameter point.
    pub fn effective_dim(&self, rng: &mut Rng) -> Result<usize> {
        let p = rng.unit_complex_vec(self.param_dim);
        let jac = self.map().jacobian(&p)?;
        let nullity = linalg::nullity_with_gap(&jac)?;
        Ok(self.param_dim - nullity)
    }
}

fn veronese_map(n: usize, d: u32) -> PolynomialSystem {
    let nvars = n + 1;
    let polys = multi_indices(nvars, d)
        .into_iter()
        .map(|alpha| {
            let c = multinomial(d, &alpha);
            Polynomial::from_terms(vec![Term::new(Complex64::new(c, 0.0), alpha)])
        })
        .collect();
    PolynomialSystem::new(nvars, polys).expect("veronese map")
}

fn segre_map(dims: &[usize]) -> PolynomialSystem {
    let nvars: usize = dims.iter().sum();
    let mut offsets = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        offsets.push(acc);
        acc += d;
    }
    let mut polys = Vec::new();
    let mut idx = vec![0usize; dims.len()];
    let total: usize = dims.iter().product();
    for _ in 0..total {
        let mut e = vec![0u32; nvars];
        for (f, &i) in idx.iter().enumerate() {
            e[offsets[f] + i] += 1;
        }
        polys.push(Polynomial::from_terms(vec![Term::new(ONE, e)]));
        for f in (0..idx.len()).rev() {
            idx[f] += 1;
            if idx[f] < dims[f] {
                break;
            }
            idx[f] = 0;
        }
    }
    PolynomialSystem::new(nvars, polys).expect("segre map")
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(pool: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..pool.len() {
            let v = pool.remove(i);
            cur.push(v);
            rec(pool, cur, out);
            cur.pop();
            pool.insert(i, v);
        }
    }
    let mut pool: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    rec(&mut pool, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|p| {
            let mut inversions = 0usize;
            for i in 0..p.len() {
                for j in (i + 1)..p.len() {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            (p, sign)
        })
        .collect()
}

fn wedge_map(k: usize, n: usize) -> PolynomialSystem {
    // row r, column c of the parameter matrix is variable r*n + c
    let nvars = k * n;
    let perms = permutations(k);
    let polys = combinations(n, k)
        .into_iter()
        .map(|cols| {
            let terms = perms
                .iter()
                .map(|(perm, sign)| {
                    let mut e = vec![0u32; nvars];
                    for (r, &pr) in perm.iter().enumerate() {
                        e[r * n + cols[pr]] += 1;
                    }
                    Term::new(Complex64::new(*sign, 0.0), e)
                })
                .collect();
            Polynomial::from_terms(terms)
        })
        .collect();
    PolynomialSystem::new(nvars, polys).expect("wedge map")
}

/// A join factor: either a parameterized cone or an implicitly defined one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Factor {
    Param(Parameterization),
    /// Affine cone defined by equations on its own block of variables.
    Implicit {
        system: PolynomialSystem,
        dim: usize,
    },
}

impl Factor {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Factor::Param(p) => p.ambient_dim,
            Factor::Implicit { system, .. } => system.num_vars,
        }
    }

    pub fn block_len(&self) -> usize {
        match self {
            Factor::Param(p) => p.param_dim,
            Factor::Implicit { system, .. } => system.num_vars,
        }
    }

    pub fn effective_dim(&self, rng: &mut Rng) -> Result<usize> {
        match self {
            Factor::Param(p) => p.effective_dim(rng),
            Factor::Implicit { dim, .. } => Ok(*dim),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JoinMode {
    AffineCone,
    PatchWithScalars,
}

/// Variable layout of an assembled incidence system: ambient block first,
/// then (in patch mode) the scalar block, then one block per factor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VarLayout {
    pub ambient: usize,
    pub lambda: Option<std::ops::Range<usize>>,
    pub blocks: Vec<std::ops::Range<usize>>,
    pub total: usize,
}

/// The incidence variety of tuples `(P, x_1, ..., x_k)` with `P = sum x_i`,
/// carried by a parameterized (or implicit) system suitable for path
/// tracking.
#[derive(Debug, Clone)]
pub struct AbstractJoin {
    pub factors: Vec<Factor>,
    pub mode: JoinMode,
    pub ambient_dim: usize,
    pub system: PolynomialSystem,
    pub layout: VarLayout,
    pub dim_total: usize,
    pub effective_dims: Vec<usize>,
    pub patch_seed: u64,
}

/// A witness system together with the image-coordinate mask defining a
/// coordinate projection; the substrate for pseudowitness computations.
#[derive(Debug, Clone)]
pub struct ProjectionSetup {
    pub system: PolynomialSystem,
    pub proj: Vec<usize>,
    pub dim_total: usize,
}

pub fn build_abstract_join(
    factors: Vec<Factor>,
    mode: JoinMode,
    rng: &mut Rng,
) -> Result<AbstractJoin> {
    if factors.is_empty() {
        return Err(CoreError::Input("join needs at least one factor".into()));
    }
    let ambient = factors[0].ambient_dim();
    if factors.iter().any(|f| f.ambient_dim() != ambient) {
        return Err(CoreError::Input(format!(
            "factor ambient dimensions differ: {:?}",
            factors.iter().map(Factor::ambient_dim).collect::<Vec<_>>()
        )));
    }
    let k = factors.len();
    let patch_seed = rng.seed();

    let lambda = match mode {
        JoinMode::AffineCone => None,
        JoinMode::PatchWithScalars => Some(ambient..ambient + k + 1),
    };
    let mut offset = match &lambda {
        Some(r) => r.end,
        None => ambient,
    };
    let mut blocks = Vec::with_capacity(k);
    for f in &factors {
        blocks.push(offset..offset + f.block_len());
        offset += f.block_len();
    }
    let total = offset;
    let layout = VarLayout {
        ambient,
        lambda: lambda.clone(),
        blocks: blocks.clone(),
        total,
    };

    // coordinate functions of each factor, embedded into the full space
    let embedded: Vec<Vec<Polynomial>> = factors
        .iter()
        .zip(&blocks)
        .map(|(f, block)| -> Result<Vec<Polynomial>> {
            let map: Vec<usize> = block.clone().collect();
            match f {
                Factor::Param(p) => {
                    Ok(p.map().embed(total, &map)?.polys)
                }
                Factor::Implicit { system, .. } => {
                    // coordinate functions are the block variables themselves
                    let _ = system;
                    Ok((0..f.ambient_dim())
                        .map(|j| {
                            let mut e = vec![0u32; total];
                            e[map[j]] = 1;
                            Polynomial::from_terms(vec![Term::new(ONE, e)])
                        })
                        .collect())
                }
            }
        })
        .collect::<Result<_>>()?;

    let mut polys: Vec<Polynomial> = Vec::new();
    match mode {
        JoinMode::AffineCone => {
            for j in 0..ambient {
                let mut e = vec![0u32; total];
                e[j] = 1;
                let mut row = Polynomial::from_terms(vec![Term::new(ONE, e)]);
                for emb in &embedded {
                    row = row.sub(&emb[j]);
                }
                polys.push(row);
            }
        }
        JoinMode::PatchWithScalars => {
            let lam = lambda.clone().unwrap();
            for j in 0..ambient {
                // P_j * lambda_0 - sum_i phi_ij * lambda_i
                let mut e = vec![0u32; total];
                e[j] = 1;
                e[lam.start] = 1;
                let mut row = Polynomial::from_terms(vec![Term::new(ONE, e)]);
                for (i, emb) in embedded.iter().enumerate() {
                    let mut lam_e = vec![0u32; total];
                    lam_e[lam.start + 1 + i] = 1;
                    let lam_poly = Polynomial::from_terms(vec![Term::new(ONE, lam_e)]);
                    row = row.sub(&emb[j].mul(&lam_poly));
                }
                polys.push(row);
            }
            // general affine patches: one row on P, one on lambda, one per block
            let patch_row = |vars: std::ops::Range<usize>, rng: &mut Rng| -> Polynomial {
                let mut coeffs = vec![Complex64::new(0.0, 0.0); total];
                for v in vars {
                    coeffs[v] = rng.unit_complex();
                }
                Polynomial::linear(&coeffs, rng.unit_complex())
            };
            polys.push(patch_row(0..ambient, rng));
            polys.push(patch_row(lam.clone(), rng));
            for block in &blocks {
                polys.push(patch_row(block.clone(), rng));
            }
        }
    }

    // implicit factor equations live on their own blocks
    for (f, block) in factors.iter().zip(&blocks) {
        if let Factor::Implicit { system, .. } = f {
            let map: Vec<usize> = block.clone().collect();
            polys.extend(system.embed(total, &map)?.polys);
        }
    }

    let system = PolynomialSystem::new(total, polys)?;
    let mut effective_dims = Vec::with_capacity(k);
    for f in &factors {
        effective_dims.push(f.effective_dim(rng)?);
    }
    let dim_param: usize = factors
        .iter()
        .map(|f| match f {
            Factor::Param(p) => p.param_dim,
            Factor::Implicit { dim, .. } => *dim,
        })
        .sum();
    let dim_total = match mode {
        JoinMode::AffineCone => dim_param,
        JoinMode::PatchWithScalars => dim_param.saturating_sub(1),
    };

    Ok(AbstractJoin {
        factors,
        mode,
        ambient_dim: ambient,
        system,
        layout,
        dim_total,
        effective_dims,
        patch_seed,
    })
}

impl AbstractJoin {
    pub fn proj(&self) -> Vec<usize> {
        (0..self.ambient_dim).collect()
    }

    pub fn setup(&self) -> ProjectionSetup {
        ProjectionSetup {
            system: self.system.clone(),
            proj: self.proj(),
            dim_total: self.dim_total,
        }
    }

    /// Expected dimension of the join image: the cone dimensions of the
    /// factors add, capped by the ambient dimension.
    pub fn expected_dim(&self) -> usize {
        let sum: usize = self.effective_dims.iter().sum();
        let sum = match self.mode {
            JoinMode::AffineCone => sum,
            JoinMode::PatchWithScalars => sum.saturating_sub(1),
        };
        sum.min(match self.mode {
            JoinMode::AffineCone => self.ambient_dim,
            JoinMode::PatchWithScalars => self.ambient_dim - 1,
        })
    }

    /// An exact point on the incidence variety from random parameters.
    pub fn sample_point(&self, rng: &mut Rng, opts: &TrackOptions) -> Result<Vec<Complex64>> {
        let mut point = vec![Complex64::new(0.0, 0.0); self.layout.total];
        let mut images: Vec<Vec<Complex64>> = Vec::with_capacity(self.factors.len());
        for (f, block) in self.factors.iter().zip(&self.layout.blocks) {
            let vals: Vec<Complex64> = match f {
                Factor::Param(p) => {
                    let params = rng.unit_complex_vec(p.param_dim);
                    for (i, v) in block.clone().enumerate() {
                        point[v] = params[i];
                    }
                    p.eval(&params)?
                }
                Factor::Implicit { system, dim } => {
                    let w = witness_point(system, *dim, rng, opts)?;
                    for (i, v) in block.clone().enumerate() {
                        point[v] = w[i];
                    }
                    w
                }
            };
            images.push(vals);
        }
        match self.mode {
            JoinMode::AffineCone => {
                for j in 0..self.ambient_dim {
                    point[j] = images.iter().map(|im| im[j]).sum();
                }
                // project parameter blocks of implicit factors were already set
                Ok(point)
            }
            JoinMode::PatchWithScalars => {
                self.finish_patch_sample(&mut point, &images, rng)?;
                Ok(point)
            }
        }
    }

    fn finish_patch_sample(
        &self,
        point: &mut [Complex64],
        images: &[Vec<Complex64>],
        rng: &mut Rng,
    ) -> Result<()> {
        let k = self.factors.len();
        let lam = self.layout.lambda.clone().unwrap();
        // patch rows are the last (k + 2) equations before implicit rows:
        // order: r_P, r_lambda, r_block_1 ... r_block_k
        let n_cone = self.ambient_dim;
        let rows = &self.system.polys;
        let r_p = &rows[n_cone];
        let r_lam = &rows[n_cone + 1];

        // adjust each factor block onto its patch row
        for (i, block) in self.layout.blocks.iter().enumerate() {
            let row = &rows[n_cone + 2 + i];
            adjust_onto_affine_row(point, row)?;
            // re-evaluate the factor image after adjustment
            let vals: Vec<Complex64> = block.clone().map(|v| point[v]).collect();
            let _ = vals;
        }
        // recompute images after adjustment
        let mut images2: Vec<Vec<Complex64>> = Vec::with_capacity(k);
        for (f, block) in self.factors.iter().zip(&self.layout.blocks) {
            let vals: Vec<Complex64> = block.clone().map(|v| point[v]).collect();
            match f {
                Factor::Param(p) => images2.push(p.eval(&vals)?),
                Factor::Implicit { .. } => images2.push(vals),
            }
        }
        let _ = images;

        // mu_i = lambda_i / lambda_0 satisfying r_P(sum mu_i phi_i) = 0
        let (cp, c0p) = affine_row_parts(r_p);
        let dot = |v: &[Complex64]| -> Complex64 {
            v.iter()
                .enumerate()
                .map(|(j, x)| cp.get(j).copied().unwrap_or_default() * x)
                .sum()
        };
        let a: Vec<Complex64> = images2.iter().map(|im| dot(im)).collect();
        let mut mu = rng.unit_complex_vec(k);
        // enforce sum mu_i a_i = c0p by adjusting along conj(a)
        let denom: Complex64 = a.iter().map(|x| x * x.conj()).sum();
        if denom.norm() < 1e-12 {
            return Err(CoreError::Numerical("degenerate patch sample".into()));
        }
        let gap = c0p - mu.iter().zip(&a).map(|(m, x)| m * x).sum::<Complex64>();
        let scale = gap / denom;
        for (m, x) in mu.iter_mut().zip(&a) {
            *m += scale * x.conj();
        }
        // P = sum mu_i phi_i
        for j in 0..self.ambient_dim {
            point[j] = images2.iter().zip(&mu).map(|(im, m)| im[j] * m).sum();
        }
        // lambda = lambda_0 (1, mu) with r_lambda fixing lambda_0
        let (cl, c0l) = affine_row_parts(r_lam);
        let mut base = vec![ONE];
        base.extend(mu.iter().copied());
        let denom2: Complex64 = base
            .iter()
            .enumerate()
            .map(|(i, b)| cl.get(lam.start + i).copied().unwrap_or_default() * b)
            .sum();
        if denom2.norm() < 1e-10 {
            return Err(CoreError::Numerical("degenerate lambda patch".into()));
        }
        let lam0 = c0l / denom2;
        for (i, b) in base.iter().enumerate() {
            point[lam.start + i] = lam0 * b;
        }
        Ok(())
    }

    /// Image reconstructed from the non-ambient blocks of an incidence point.
    pub fn reconstruct_image(&self, point: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.ambient_dim];
        for (f, block) in self.factors.iter().zip(&self.layout.blocks) {
            let vals: Vec<Complex64> = block.clone().map(|v| point[v]).collect();
            let image = match f {
                Factor::Param(p) => p.eval(&vals)?,
                Factor::Implicit { .. } => vals,
            };
            for j in 0..self.ambient_dim {
                out[j] += image[j];
            }
        }
        Ok(out)
    }

    /// The fiber system over a fixed image point, in the block variables
    /// only: `sum_i phi_i(a_i) - target = 0` plus any implicit factor
    /// equations. Cone mode only.
    pub fn fiber_system(&self, target: &[Complex64]) -> Result<PolynomialSystem> {
        if self.mode != JoinMode::AffineCone {
            return Err(CoreError::Input(
                "fiber systems are built from the affine-cone formulation".into(),
            ));
        }
        if target.len() != self.ambient_dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.ambient_dim,
                got: target.len(),
            });
        }
        let total = self.layout.total - self.ambient_dim;
        let mut embedded: Vec<Vec<Polynomial>> = Vec::with_capacity(self.factors.len());
        for (f, block) in self.factors.iter().zip(&self.layout.blocks) {
            let map: Vec<usize> = block.clone().map(|v| v - self.ambient_dim).collect();
            match f {
                Factor::Param(p) => embedded.push(p.map().embed(total, &map)?.polys),
                Factor::Implicit { .. } => embedded.push(
                    (0..self.ambient_dim)
                        .map(|j| {
                            let mut e = vec![0u32; total];
                            e[map[j]] = 1;
                            Polynomial::from_terms(vec![Term::new(ONE, e)])
                        })
                        .collect(),
                ),
            }
        }
        let mut polys: Vec<Polynomial> = (0..self.ambient_dim)
            .map(|j| {
                let mut row = Polynomial::constant(-target[j], total);
                for emb in &embedded {
                    row = row.add(&emb[j]);
                }
                row
            })
            .collect();
        for (f, block) in self.factors.iter().zip(&self.layout.blocks) {
            if let Factor::Implicit { system, .. } = f {
                let map: Vec<usize> = block.clone().map(|v| v - self.ambient_dim).collect();
                polys.extend(system.embed(total, &map)?.polys);
            }
        }
        PolynomialSystem::new(total, polys)
    }

    /// Block ranges within the fiber-space coordinates (ambient stripped).
    pub fn fiber_blocks(&self) -> Vec<std::ops::Range<usize>> {
        self.layout
            .blocks
            .iter()
            .map(|b| (b.start - self.ambient_dim)..(b.end - self.ambient_dim))
            .collect()
    }

    /// Per-factor ambient summand vectors of a fiber-space point.
    pub fn summands(&self, fiber_point: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
        self.factors
            .iter()
            .zip(self.fiber_blocks())
            .map(|(f, block)| {
                let vals: Vec<Complex64> = block.clone().map(|v| fiber_point[v]).collect();
                match f {
                    Factor::Param(p) => p.eval(&vals),
                    Factor::Implicit { .. } => Ok(vals),
                }
            })
            .collect()
    }

    /// Image of a fiber-space point: the sum of its summands.
    pub fn image_of_fiber_point(&self, fiber_point: &[Complex64]) -> Result<Vec<Complex64>> {
        let summands = self.summands(fiber_point)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.ambient_dim];
        for s in summands {
            for j in 0..self.ambient_dim {
                out[j] += s[j];
            }
        }
        Ok(out)
    }

    /// `|sum phi_i(a_i) - P| / (1 + |P|)` for an incidence point (cone mode).
    pub fn reconstruction_residual(&self, point: &[Complex64]) -> Result<f64> {
        match self.mode {
            JoinMode::AffineCone => {
                let image = self.reconstruct_image(point)?;
                let p = &point[..self.ambient_dim];
                let diff: f64 = image
                    .iter()
                    .zip(p)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                let np: f64 = p.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                Ok(diff / (1.0 + np))
            }
            JoinMode::PatchWithScalars => {
                // residual of the bilinear cone rows only
                let vals = self.system.evaluate(point)?;
                Ok(vals[..self.ambient_dim]
                    .iter()
                    .map(|v| v.norm_sqr())
                    .sum::<f64>()
                    .sqrt())
            }
        }
    }
}

fn affine_row_parts(row: &Polynomial) -> (Vec<Complex64>, Complex64) {
    let n = row.num_vars().unwrap_or(0);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    let mut c0 = Complex64::new(0.0, 0.0);
    for t in &row.terms {
        if t.degree() == 0 {
            c0 = -t.coeff;
        } else if let Some(i) = t.exponents.iter().position(|&e| e == 1) {
            coeffs[i] = t.coeff;
        }
    }
    (coeffs, c0)
}

fn adjust_onto_affine_row(point: &mut [Complex64], row: &Polynomial) -> Result<()> {
    let (c, c0) = affine_row_parts(row);
    let cur: Complex64 = c.iter().zip(point.iter()).map(|(a, x)| a * x).sum();
    let denom: Complex64 = c.iter().map(|a| a * a.conj()).sum();
    if denom.norm() < 1e-12 {
        return Err(CoreError::Numerical("degenerate patch row".into()));
    }
    let scale = (c0 - cur) / denom;
    for (x, a) in point.iter_mut().zip(&c) {
        *x += scale * a.conj();
    }
    Ok(())
}

/// Dimension report from the stacked-Jacobian nullity computation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DimensionReport {
    pub dim_image: usize,
    pub dim_total: usize,
    pub expected: usize,
    pub defect: i64,
}

/// Nullity of `[Jf; B]` at one point, where `B` selects the projection
/// coordinates.
pub fn image_dimension_at(setup: &ProjectionSetup, point: &[Complex64]) -> Result<usize> {
    let jf = setup.system.jacobian(point)?;
    let m = jf.nrows();
    let n = jf.ncols();
    let mut stacked = DMatrix::from_element(m + setup.proj.len(), n, Complex64::new(0.0, 0.0));
    stacked.view_mut((0, 0), (m, n)).copy_from(&jf);
    for (r, &j) in setup.proj.iter().enumerate() {
        stacked[(m + r, j)] = ONE;
    }
    let nullity = linalg::nullity_with_gap(&stacked)?;
    Ok(setup.dim_total - nullity)
}

/// Image dimension of a join via the stacked-Jacobian nullity at a random
/// incidence point; retries on an ambiguous singular-value profile.
pub fn image_dimension(
    join: &AbstractJoin,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<DimensionReport> {
    let setup = join.setup();
    let mut last_err = None;
    for _ in 0..3 {
        let p = join.sample_point(rng, opts)?;
        match image_dimension_at(&setup, &p) {
            Ok(dim_image) => {
                let expected = join.expected_dim();
                return Ok(DimensionReport {
                    dim_image,
                    dim_total: join.dim_total,
                    expected,
                    defect: expected as i64 - dim_image as i64,
                });
            }
            Err(e @ CoreError::GapAmbiguous(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| CoreError::GapAmbiguous("no sample succeeded".into())))
}

/// A witness set `{f, L, W}`.
#[derive(Debug, Clone)]
pub struct WitnessSet {
    pub system: PolynomialSystem,
    pub slice: LinearSlice,
    pub points: SolutionSet,
    pub dim: usize,
    pub deg: usize,
}

/// Witness set of the `dim`-dimensional solution component of `f`: slice by
/// a random slice of codimension `dim`, solve the squared-up system, and
/// certify completeness with a trace test. An unlucky slice (the trace
/// fails — e.g. it pushes some intersection points far out) is redrawn.
pub fn witness_set(
    f: &PolynomialSystem,
    dim: usize,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<WitnessSet> {
    let nv = f.num_vars;
    let mut best: Option<WitnessSet> = None;
    for attempt in 0..3 {
        let slice = LinearSlice::random(nv, dim, None, rng)?;
        let f_sq = solver::square_up(f, nv - dim, rng)?;
        let sys = f_sq.appended(&slice.rows_as_polys(nv, None))?;
        let sols = match solver::total_degree_solve(&sys, rng, opts) {
            Ok(s) => s,
            Err(e) if attempt < 2 => {
                let _ = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        // filter against the full (unsquared) system
        let full = f.appended(&slice.rows_as_polys(nv, None))?;
        let kept: Vec<(Vec<Complex64>, f64)> = sols
            .points
            .into_iter()
            .zip(sols.residuals)
            .filter(|(p, _)| {
                full.residual(p)
                    .map(|r| r < solver::RESIDUAL_GATE)
                    .unwrap_or(false)
            })
            .collect();
        if kept.is_empty() {
            continue;
        }
        let (points, residuals) = solver::dedup_points(kept, solver::DEDUP_TOL);
        let deg = points.len();
        let certified = dim == 0
            || matches!(
                solver::trace_test(f, &slice, None, &points, None, rng, opts),
                Ok(true)
            );
        let ws = WitnessSet {
            system: f.clone(),
            slice,
            points: SolutionSet {
                points,
                residuals,
                dedup_tol: solver::DEDUP_TOL,
                seed: rng.seed(),
            },
            dim,
            deg,
        };
        if certified {
            return Ok(ws);
        }
        if best.as_ref().map_or(true, |b| b.deg < ws.deg) {
            best = Some(ws);
        }
    }
    best.ok_or(CoreError::EmptyWitness)
}

/// One point of the `dim`-dimensional component of `f`.
fn witness_point(
    f: &PolynomialSystem,
    dim: usize,
    rng: &mut Rng,
    opts: &TrackOptions,
) -> Result<Vec<Complex64>> {
    let w = witness_set(f, dim, rng, opts)?;
    Ok(w.points.points[0].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwMethod {
    FromWitness,
    Monodromy { stall_limit: usize },
}

/// A pseudowitness set `{f, pi, M, U}` with cached dimension and degree
/// data. The structured slice `M` consists of `image_dim` rows pulled back
/// from the image coordinates and `fiber_dim` general rows.
#[derive(Debug, Clone)]
pub struct PseudoWitnessSet {
    pub system: PolynomialSystem,
    pub proj: Vec<usize>,
    pub slice_image: LinearSlice,
    pub slice_fiber: LinearSlice,
    pub points: SolutionSet,
    pub dim_total: usize,
    pub image_dim: usize,
    pub image_deg: usize,
    pub fiber_dim: usize,
    pub fiber_deg: usize,
    pub warnings: Vec<String>,
}

impl PseudoWitnessSet {
    pub fn project(&self, point: &[Complex64]) -> Vec<Complex64> {
        self.proj.iter().map(|&i| point[i]).collect()
    }

    /// Distinct image points of `U` at the dedup tolerance.
    pub fn image_points(&self) -> Vec<Vec<Complex64>> {
        let items: Vec<(Vec<Complex64>, f64)> = self
            .points
            .points
            .iter()
            .map(|p| (self.project(p), 0.0))
            .collect();
        solver::dedup_points(items, solver::DEDUP_TOL).0
    }

    /// Indices into `U` giving one lift per distinct image point.
    pub fn lifts_one_per_image(&self) -> Vec<usize> {
        let mut reps: Vec<Vec<Complex64>> = Vec::new();
        let mut idx = Vec::new();
        for (i, p) in self.points.points.iter().enumerate() {
            let pi = self.project(p);
            if !reps.iter().any(|r| solver::rel_dist(r, &pi) < solver::DEDUP_TOL) {
                reps.push(pi);
                idx.push(i);
            }
        }
        idx
    }

    /// Every lift of the image point nearest to `image_pt`.
    pub fn lifts_of_image_point(&self, image_pt: &[Complex64]) -> Vec<usize> {
        self.points
            .points
            .iter()
            .enumerate()
            .filter(|(_, p)| solver::rel_dist(&self.project(p), image_pt) < solver::DEDUP_TOL)
            .map(|(i, _)| i)
            .collect()
    }

    /// The system together with the fixed fiber rows; membership homotopies
    /// move only the image rows against this.
    pub fn fixed_system(&self) -> Result<PolynomialSystem> {
        let nv = self.system.num_vars;
        self.system
            .appended(&self.slice_fiber.rows_as_polys(nv, None))
    }

    /// Image slice rows widened to the full variable space.
    pub fn widened_image_slice(&self) -> LinearSlice {
        widen_slice(&self.slice_image, self.system.num_vars, &self.proj)
    }
}

pub fn widen_slice(slice: &LinearSlice, total_vars: usize, map: &[usize]) -> LinearSlice {
    let rows: Vec<Vec<Complex64>> = slice
        .coeff_matrix
        .iter()
        .map(|row| {
            let mut wide = vec![Complex64::new(0.0, 0.0); total_vars];
            for (j, &a) in row.iter().enumerate() {
                wide[map[j]] = a;
            }
            wide
        })
        .collect();
    LinearSlice::from_rows(rows, slice.offset.clone(), slice.seed)
}

/// Build a pseudowitness set for the closure of the projection of the
/// variety carried by `setup`.
///
/// `FromWitness` slices generically, solves by total degree, and transports
/// the witness points onto the structured slice; `Monodromy` grows `U` from
/// the supplied seed points by random slice loops. In both cases the
/// completeness of the projected point set is checked with a trace test and
/// a failure is attached as a warning rather than an error.
pub fn pseudowitness_set(
    setup: &ProjectionSetup,
    image_dim: usize,
    seeds: &[Vec<Complex64>],
    rng: &mut Rng,
    method: PwMethod,
    opts: &TrackOptions,
) -> Result<PseudoWitnessSet> {
    let nv = setup.system.num_vars;
    let fiber_dim = setup
        .dim_total
        .checked_sub(image_dim)
        .ok_or_else(|| CoreError::Input("image dim exceeds total dim".into()))?;

    let mut warnings = Vec::new();
    let (slice_image, slice_fiber, u_points) = match method {
        PwMethod::FromWitness => {
            let w = witness_set(&setup.system, setup.dim_total, rng, opts)?;
            let slice_image =
                LinearSlice::random(setup.proj.len(), image_dim, None, rng)?;
            let slice_fiber = LinearSlice::random(nv, fiber_dim, None, rng)?;
            let to = combined_slice(&slice_image, &slice_fiber, nv, &setup.proj);
            let results = solver::move_slice_union(
                &setup.system,
                &w.slice,
                &w.points.points,
                &to,
                None,
                rng,
                opts,
            )?;
            let full = setup.system.appended(&to.rows_as_polys(nv, None))?;
            let sols = solver::collect_solutions(
                &full,
                results,
                rng.seed(),
                opts,
            )?;
            (slice_image, slice_fiber, sols)
        }
        PwMethod::Monodromy { stall_limit } => {
            if seeds.is_empty() {
                return Err(CoreError::Input(
                    "monodromy pseudowitness needs seed points".into(),
                ));
            }
            let seed0 = &seeds[0];
            let image_seed: Vec<Complex64> = setup.proj.iter().map(|&i| seed0[i]).collect();
            let slice_image =
                LinearSlice::random(setup.proj.len(), image_dim, Some(&image_seed), rng)?;
            let slice_fiber = LinearSlice::random(nv, fiber_dim, Some(seed0), rng)?;
            let base_comb = combined_slice(&slice_image, &slice_fiber, nv, &setup.proj);
            let f_sq = solver::square_up(&setup.system, nv - base_comb.codim(), rng)?;
            let base = f_sq.appended(&base_comb.rows_as_polys(nv, None))?;
            let full = setup.system.appended(&base_comb.rows_as_polys(nv, None))?;
            let proj = setup.proj.clone();
            let img_len = setup.proj.len();
            let sols = solver::monodromy_engine(
                &base,
                move |r: &mut Rng| {
                    let si = LinearSlice::random(img_len, image_dim, None, r)?;
                    let sf = LinearSlice::random(nv, fiber_dim, None, r)?;
                    let comb = combined_slice(&si, &sf, nv, &proj);
                    f_sq.appended(&comb.rows_as_polys(nv, None))
                },
                seeds,
                rng,
                solver::MonodromyOptions {
                    stall_limit,
                    ..Default::default()
                },
                opts,
                Some(&full),
            )?;
            (slice_image, slice_fiber, sols)
        }
    };

    if u_points.is_empty() {
        return Err(CoreError::EmptyWitness);
    }

    // degrees
    let image_pts = {
        let items: Vec<(Vec<Complex64>, f64)> = u_points
            .points
            .iter()
            .map(|p| (setup.proj.iter().map(|&i| p[i]).collect(), 0.0))
            .collect();
        solver::dedup_points(items, solver::DEDUP_TOL).0
    };
    let image_deg = image_pts.len();
    let total = u_points.len();
    if total % image_deg != 0 {
        warnings.push(format!(
            "fiber degree not integral: |U| = {total}, |pi(U)| = {image_deg}"
        ));
    }
    let fiber_deg = total / image_deg;

    // projected trace test as the completeness certificate
    let fixed = setup
        .system
        .appended(&slice_fiber.rows_as_polys(nv, None))?;
    let moving = widen_slice(&slice_image, nv, &setup.proj);
    match solver::trace_test(
        &fixed,
        &moving,
        None,
        &u_points.points,
        Some(&setup.proj),
        rng,
        opts,
    ) {
        Ok(true) => {}
        Ok(false) => warnings.push("trace test failed: set may be incomplete".into()),
        Err(e) => warnings.push(format!("trace test errored: {e}")),
    }

    Ok(PseudoWitnessSet {
        system: setup.system.clone(),
        proj: setup.proj.clone(),
        slice_image,
        slice_fiber,
        points: u_points,
        dim_total: setup.dim_total,
        image_dim,
        image_deg,
        fiber_dim,
        fiber_deg,
        warnings,
    })
}

/// Pseudowitness set of a join's image, computing the image dimension first.
pub fn join_pseudowitness(
    join: &AbstractJoin,
    rng: &mut Rng,
    method: PwMethod,
    opts: &TrackOptions,
) -> Result<PseudoWitnessSet> {
    let report = image_dimension(join, rng, opts)?;
    let setup = join.setup();
    let seeds = match method {
        PwMethod::FromWitness => Vec::new(),
        PwMethod::Monodromy { .. } => vec![join.sample_point(rng, opts)?],
    };
    pseudowitness_set(&setup, report.dim_image, &seeds, rng, method, opts)
}

pub fn combined_slice(
    image: &LinearSlice,
    fiber: &LinearSlice,
    total_vars: usize,
    proj: &[usize],
) -> LinearSlice {
    let widened = widen_slice(image, total_vars, proj);
    let mut rows = widened.coeff_matrix;
    let mut offset = widened.offset;
    rows.extend(fiber.coeff_matrix.iter().cloned());
    offset.extend(fiber.offset.iter().cloned());
    LinearSlice::from_rows(rows, offset, image.seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn veronese_matches_cubic_convention() {
        let v3 = Parameterization::veronese(1, 3);
        assert_eq!(v3.ambient_dim, 4);
        let out = v3.eval(&[c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        // (a^3, 3a^2b, 3ab^2, b^3) at (2,3) = (8, 36, 54, 27)
        let expect = [8.0, 36.0, 54.0, 27.0];
        for (o, e) in out.iter().zip(expect) {
            assert!((o - c(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn veronese_ambient_dims() {
        assert_eq!(Parameterization::veronese(2, 2).ambient_dim, 6);
        assert_eq!(Parameterization::veronese(2, 5).ambient_dim, 21);
        assert_eq!(Parameterization::veronese(3, 4).ambient_dim, 35);
    }

    #[test]
    fn segre_outer_product() {
        let s = Parameterization::segre(vec![2, 2]);
        let out = s
            .eval(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)])
            .unwrap();
        // lex over (i,j): (1*3, 1*4, 2*3, 2*4)
        let expect = [3.0, 4.0, 6.0, 8.0];
        for (o, e) in out.iter().zip(expect) {
            assert!((o - c(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn wedge_2_3_is_cross_product_up_to_sign() {
        let w = Parameterization::wedge(2, 3);
        assert_eq!(w.ambient_dim, 3);
        let v = [
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
        ];
        // e1 ∧ e2: p_{01} = 1, p_{02} = 0, p_{12} = 0
        let out = w.eval(&v).unwrap();
        assert!((out[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(out[1].norm() < 1e-12 && out[2].norm() < 1e-12);
    }

    #[test]
    fn grassmann_pluecker_relations_hold() {
        // three-term Grassmann-Pluecker relations for G(3,7) coordinates
        let w = Parameterization::wedge(3, 7);
        let mut rng = Rng::from_seed(23);
        let params = rng.unit_complex_vec(21);
        let p = w.eval(&params).unwrap();
        let combos = combinations(7, 3);
        let index_of = |mut ix: Vec<usize>| -> (f64, Option<usize>) {
            // sign of the sort, None on repeats
            let mut sign = 1.0;
            for i in 0..ix.len() {
                for j in (i + 1)..ix.len() {
                    match ix[i].cmp(&ix[j]) {
                        std::cmp::Ordering::Equal => return (0.0, None),
                        std::cmp::Ordering::Greater => {
                            ix.swap(i, j);
                            sign = -sign;
                        }
                        _ => {}
                    }
                }
            }
            let pos = combos.iter().position(|cset| cset == &ix);
            (sign, pos)
        };
        // relation: sum_s (-1)^s p_{i1 i2 j_s} p_{j \ j_s} = 0
        let i = [0usize, 1];
        let j = [2usize, 3, 4, 5];
        let mut acc = c(0.0, 0.0);
        for (s, &js) in j.iter().enumerate() {
            let (sg1, pos1) = index_of(vec![i[0], i[1], js]);
            let rest: Vec<usize> = j.iter().enumerate().filter(|&(t, _)| t != s).map(|(_, &v)| v).collect();
            let (sg2, pos2) = index_of(rest);
            let term = match (pos1, pos2) {
                (Some(a), Some(b)) => p[a] * p[b] * sg1 * sg2,
                _ => c(0.0, 0.0),
            };
            acc += if s % 2 == 0 { term } else { -term };
        }
        assert!(acc.norm() < 1e-10, "relation residual {}", acc.norm());
    }

    #[test]
    fn affine_cone_join_shape() {
        let mut rng = Rng::from_seed(31);
        let join = build_abstract_join(
            vec![
                Factor::Param(Parameterization::veronese(1, 3)),
                Factor::Param(Parameterization::veronese(1, 3)),
            ],
            JoinMode::AffineCone,
            &mut rng,
        )
        .unwrap();
        assert_eq!(join.system.len(), 4);
        assert_eq!(join.layout.total, 8);
        assert_eq!(join.dim_total, 4);
        let p = join.sample_point(&mut rng, &TrackOptions::default()).unwrap();
        assert!(join.system.residual(&p).unwrap() < 1e-12);
    }

    #[test]
    fn patch_join_shape_and_sample() {
        let mut rng = Rng::from_seed(37);
        let join = build_abstract_join(
            vec![
                Factor::Param(Parameterization::veronese(1, 3)),
                Factor::Param(Parameterization::veronese(1, 3)),
            ],
            JoinMode::PatchWithScalars,
            &mut rng,
        )
        .unwrap();
        // 4 bilinear cone rows + patches on P, lambda, and each block
        assert_eq!(join.system.len(), 4 + 4);
        assert_eq!(join.layout.total, 4 + 3 + 4);
        let p = join.sample_point(&mut rng, &TrackOptions::default()).unwrap();
        assert!(
            join.system.residual(&p).unwrap() < 1e-10,
            "patch sample residual {}",
            join.system.residual(&p).unwrap()
        );
    }

    #[test]
    fn rank1_cubic_cone_dimension() {
        let mut rng = Rng::from_seed(41);
        let join = build_abstract_join(
            vec![Factor::Param(Parameterization::veronese(1, 3))],
            JoinMode::AffineCone,
            &mut rng,
        )
        .unwrap();
        let rep = image_dimension(&join, &mut rng, &TrackOptions::default()).unwrap();
        assert_eq!(rep.dim_image, 2);
        assert_eq!(rep.dim_total, 2);
        assert_eq!(rep.defect, 0);
    }

    #[test]
    fn border_rank_two_fills_sym3c2() {
        let mut rng = Rng::from_seed(43);
        let join = build_abstract_join(
            vec![
                Factor::Param(Parameterization::veronese(1, 3)),
                Factor::Param(Parameterization::veronese(1, 3)),
            ],
            JoinMode::AffineCone,
            &mut rng,
        )
        .unwrap();
        let rep = image_dimension(&join, &mut rng, &TrackOptions::default()).unwrap();
        assert_eq!(rep.dim_image, 4);
        assert_eq!(rep.defect, 0);
    }
}
