//! Brute-force matrix oracle: explicit FH-modules over F_q and linear-algebra
//! computation of Hom, stable Hom, Heller translates and Ext^1. Everything
//! here is independent of the counting formulas it is used to check.

pub mod field;
pub mod matrix;

use std::cell::RefCell;
use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::basep::{self, GroupParams};
use crate::error::{Error, Result};
use crate::symbols::StableSymbol;
use field::FiniteField;
use matrix::Mat;

const RNG_SEED: u64 = 0x51_2717;

/// An FH-module given by the matrices of the torus generator t and of the
/// unipotents u_{alpha^k}, k = 0..n-1.
#[derive(Debug, Clone)]
pub struct MatrixModule {
    pub dim: usize,
    pub t: Mat,
    pub us: Vec<Mat>,
}

pub struct Oracle {
    pub params: GroupParams,
    pub field: FiniteField,
    m_cache: RefCell<HashMap<i64, MatrixModule>>,
    cover_cache: RefCell<HashMap<i64, (MatrixModule, Mat)>>,
    heller_cache: RefCell<HashMap<i64, MatrixModule>>,
}

fn binom_mod_p(j: usize, i: usize, p: u32) -> u32 {
    let mut row = vec![1u64];
    for _ in 0..j {
        let mut next = vec![1u64];
        for w in row.windows(2) {
            next.push((w[0] + w[1]) % p as u64);
        }
        next.push(1);
        row = next;
    }
    (row[i] % p as u64) as u32
}

impl Oracle {
    pub fn new(params: GroupParams) -> Result<Self> {
        let field = FiniteField::new(params.p, params.n)?;
        Self::with_field(params, field)
    }

    pub fn with_field(params: GroupParams, field: FiniteField) -> Result<Self> {
        if field.p != params.p || field.n != params.n {
            return Err(Error::InvalidParams("field does not match group params".into()));
        }
        let oracle = Self {
            params,
            field,
            m_cache: RefCell::new(HashMap::new()),
            cover_cache: RefCell::new(HashMap::new()),
            heller_cache: RefCell::new(HashMap::new()),
        };
        oracle.check_conventions()?;
        Ok(oracle)
    }

    /// The one-dimensional module U_i: t scales by alpha^i.
    pub fn build_u(&self, i: i64) -> MatrixModule {
        let mut t = Mat::identity(1);
        t.set(0, 0, self.field.alpha_pow(i));
        MatrixModule {
            dim: 1,
            t,
            us: vec![Mat::identity(1); self.params.n as usize],
        }
    }

    /// Symmetric power of the natural module, restricted to H: basis
    /// e_j = x^(a-j) y^j with t e_j = alpha^(2j-a) e_j and
    /// u_c e_j = sum_i C(j,i) c^(j-i) e_i.
    fn sym_power(&self, a: u32) -> MatrixModule {
        let dim = a as usize + 1;
        let f = &self.field;
        let mut t = Mat::zero(dim, dim);
        for j in 0..dim {
            t.set(j, j, f.alpha_pow(2 * j as i64 - a as i64));
        }
        let mut us = Vec::with_capacity(self.params.n as usize);
        for k in 0..self.params.n {
            let c = f.alpha_pow(k as i64);
            let mut u = Mat::zero(dim, dim);
            for j in 0..dim {
                for i in 0..=j {
                    let coeff = f.mul(
                        f.scalar(binom_mod_p(j, i, self.params.p)),
                        f.pow(c, (j - i) as i64),
                    );
                    u.set(i, j, coeff);
                }
            }
            us.push(u);
        }
        MatrixModule { dim, t, us }
    }

    /// Frobenius twist: every generator matrix entrywise raised to p.
    pub fn frobenius_twist(&self, m: &MatrixModule) -> MatrixModule {
        let f = &self.field;
        let tw = |mat: &Mat| {
            let mut out = mat.clone();
            for v in out.a.iter_mut() {
                *v = f.frob(*v);
            }
            out
        };
        MatrixModule {
            dim: m.dim,
            t: tw(&m.t),
            us: m.us.iter().map(tw).collect(),
        }
    }

    pub fn tensor(&self, m: &MatrixModule, other: &MatrixModule) -> MatrixModule {
        MatrixModule {
            dim: m.dim * other.dim,
            t: m.t.kron(&other.t, &self.field),
            us: m
                .us
                .iter()
                .zip(&other.us)
                .map(|(a, b)| a.kron(b, &self.field))
                .collect(),
        }
    }

    /// Tensor by U_j: scales the t-action only.
    pub fn twist(&self, m: &MatrixModule, j: i64) -> MatrixModule {
        MatrixModule {
            dim: m.dim,
            t: m.t.scale(self.field.alpha_pow(j), &self.field),
            us: m.us.clone(),
        }
    }

    pub fn direct_sum(&self, m: &MatrixModule, other: &MatrixModule) -> MatrixModule {
        MatrixModule {
            dim: m.dim + other.dim,
            t: m.t.direct_sum(&other.t),
            us: m
                .us
                .iter()
                .zip(&other.us)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// M_a: the restriction of the simple S_a, built as the tensor product of
    /// Frobenius twists of symmetric powers along the base-p digits of a.
    pub fn build_m(&self, a: i64) -> Result<MatrixModule> {
        if let Some(m) = self.m_cache.borrow().get(&a) {
            return Ok(m.clone());
        }
        let digits = basep::to_digits(a, &self.params)?.digits;
        let mut m = self.build_u(0);
        for (i, &d) in digits.iter().enumerate() {
            let mut factor = self.sym_power(d);
            for _ in 0..i {
                factor = self.frobenius_twist(&factor);
            }
            m = self.tensor(&m, &factor);
        }
        self.m_cache.borrow_mut().insert(a, m.clone());
        Ok(m)
    }

    /// The module for a canonical symbol: U_u M_idx, with a Heller translate
    /// applied when omega = 1. The zero symbol yields the projective M_{q-1}.
    pub fn symbol_module(&self, s: StableSymbol) -> Result<MatrixModule> {
        if s.zero {
            return self.build_m(self.params.q - 1);
        }
        let base = self.twist(&self.build_m(s.idx)?, s.u);
        if s.omega == 1 {
            self.heller(&base)
        } else {
            Ok(base)
        }
    }

    /// rho(u_c) for arbitrary c, via the F_p-decomposition of c over the
    /// basis {alpha^k}.
    fn u_param(&self, m: &MatrixModule, c: u16) -> Mat {
        let f = &self.field;
        let n = self.params.n as usize;
        // columns: coordinates of alpha^k over the prime field
        let mut basis = Mat::zero(n, n);
        for k in 0..n {
            for (r, &co) in f.coords(f.alpha_pow(k as i64)).iter().enumerate() {
                basis.set(r, k, co as u16);
            }
        }
        let mut rhs = Mat::zero(n, 1);
        for (r, &co) in f.coords(c).iter().enumerate() {
            rhs.set(r, 0, co as u16);
        }
        // prime-subfield arithmetic is closed under the field tables
        let lambda = basis.solve(&rhs, f).expect("alpha powers span F_q over F_p");
        let mut out = Mat::identity(m.dim);
        for k in 0..n {
            for _ in 0..lambda.get(k, 0) {
                out = out.mul(&m.us[k], f);
            }
        }
        out
    }

    /// Basis of Hom_FH(X, Y): solutions of f rho_X(g) = rho_Y(g) f over the
    /// n+1 generators.
    pub fn hom_basis(&self, x: &MatrixModule, y: &MatrixModule) -> Vec<Mat> {
        let f = &self.field;
        let unknowns = x.dim * y.dim;
        let gens = 1 + x.us.len();
        let mut system = Mat::zero(gens * unknowns, unknowns);
        let mut write_block = |block: usize, gx: &Mat, gy: &Mat| {
            // vec(F gx) - vec(gy F) = (gx^T kron I - I kron gy) vec(F)
            let lhs = gx.transpose().kron(&Mat::identity(y.dim), f);
            let rhs = Mat::identity(x.dim).kron(gy, f);
            let diff = lhs.sub(&rhs, f);
            for r in 0..unknowns {
                for c in 0..unknowns {
                    system.set(block * unknowns + r, c, diff.get(r, c));
                }
            }
        };
        write_block(0, &x.t, &y.t);
        for (k, (gx, gy)) in x.us.iter().zip(&y.us).enumerate() {
            write_block(k + 1, gx, gy);
        }
        let kernel = system.kernel_basis(f);
        (0..kernel.cols)
            .map(|c| {
                let col: Vec<u16> = (0..unknowns).map(|r| kernel.get(r, c)).collect();
                Mat::from_vec(&col, y.dim, x.dim)
            })
            .collect()
    }

    pub fn hom_dim(&self, x: &MatrixModule, y: &MatrixModule) -> usize {
        self.hom_basis(x, y).len()
    }

    /// Multiplicities of U_e in the head of m, e = 0..q-2.
    pub fn head(&self, m: &MatrixModule) -> Vec<(i64, usize)> {
        (0..self.params.modulus)
            .filter_map(|e| {
                let d = self.hom_dim(m, &self.build_u(e));
                (d > 0).then_some((e, d))
            })
            .collect()
    }

    /// Multiplicities of U_e in the socle of m.
    pub fn socle(&self, m: &MatrixModule) -> Vec<(i64, usize)> {
        (0..self.params.modulus)
            .filter_map(|e| {
                let d = self.hom_dim(&self.build_u(e), m);
                (d > 0).then_some((e, d))
            })
            .collect()
    }

    /// A full-rank combination of the hom basis, of rank `target`, or None.
    fn full_rank_combo(&self, basis: &[Mat], target: usize) -> Option<Mat> {
        let f = &self.field;
        if basis.is_empty() {
            return (target == 0).then(|| Mat::zero(0, 0));
        }
        let ok = |m: &Mat| m.rank(f) == target;
        for b in basis {
            if ok(b) {
                return Some(b.clone());
            }
        }
        let sum = basis
            .iter()
            .skip(1)
            .fold(basis[0].clone(), |acc, b| acc.add(b, f));
        if ok(&sum) {
            return Some(sum);
        }
        let mut rng = StdRng::seed_from_u64(RNG_SEED);
        for _ in 0..500 {
            let mut cand = Mat::zero(basis[0].rows, basis[0].cols);
            for b in basis {
                let s = rng.gen_range(0..self.field.q as u16);
                cand = cand.add(&b.scale(s, f), f);
            }
            if ok(&cand) {
                return Some(cand);
            }
        }
        // exhaustive fallback at tiny sizes
        let k = basis.len();
        if (self.field.q as u64).pow(k as u32) <= 200_000 {
            let mut coeffs = vec![0u16; k];
            loop {
                let mut cand = Mat::zero(basis[0].rows, basis[0].cols);
                for (b, &s) in basis.iter().zip(&coeffs) {
                    cand = cand.add(&b.scale(s, f), f);
                }
                if ok(&cand) {
                    return Some(cand);
                }
                let mut i = 0;
                while i < k {
                    coeffs[i] += 1;
                    if (coeffs[i] as usize) < self.field.q {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
        None
    }

    /// Projective cover of an arbitrary module in the supported family:
    /// one copy of U_e (x) M_{q-1} per head factor, with a surjection.
    pub fn projective_cover(&self, y: &MatrixModule) -> Result<(MatrixModule, Mat)> {
        let head = self.head(y);
        let steinberg = self.build_m(self.params.q - 1)?;
        let mut p: Option<MatrixModule> = None;
        for &(e, mult) in &head {
            for _ in 0..mult {
                let summand = self.twist(&steinberg, e);
                p = Some(match p {
                    None => summand,
                    Some(acc) => self.direct_sum(&acc, &summand),
                });
            }
        }
        let p = p.ok_or(Error::NoSurjectionFound)?;
        let basis = self.hom_basis(&p, y);
        let surj = self
            .full_rank_combo(&basis, y.dim)
            .ok_or(Error::NoSurjectionFound)?;
        Ok((p, surj))
    }

    /// Projective cover of U_j M_c known in closed form: U_{j+c} M_{q-1}.
    pub fn projective_cover_symbolic(&self, j: i64, c: i64) -> Result<(MatrixModule, Mat)> {
        let y = self.twist(&self.build_m(c)?, j);
        let p = self.twist(&self.build_m(self.params.q - 1)?, j + c);
        let basis = self.hom_basis(&p, &y);
        let surj = self
            .full_rank_combo(&basis, y.dim)
            .ok_or(Error::NoSurjectionFound)?;
        Ok((p, surj))
    }

    /// Heller translate: kernel of the projective cover surjection, with the
    /// generator actions induced on the kernel basis.
    pub fn heller(&self, x: &MatrixModule) -> Result<MatrixModule> {
        let (p, surj) = self.projective_cover(x)?;
        let basis = surj.kernel_basis(&self.field);
        if basis.cols == 0 {
            return Err(Error::ProjectiveInput);
        }
        self.induced_on_span(&p, &basis)
    }

    fn induced_on_span(&self, ambient: &MatrixModule, basis: &Mat) -> Result<MatrixModule> {
        let f = &self.field;
        let induce = |g: &Mat| -> Result<Mat> {
            let image = g.mul(basis, f);
            basis
                .solve(&image, f)
                .ok_or_else(|| Error::InvalidParams("span is not generator-stable".into()))
        };
        let t = induce(&ambient.t)?;
        let us = ambient.us.iter().map(induce).collect::<Result<Vec<_>>>()?;
        Ok(MatrixModule {
            dim: basis.cols,
            t,
            us,
        })
    }

    /// Cached Heller translate of M_b (untwisted); Omega commutes with
    /// tensoring by U_j, so twists are applied afterwards.
    fn heller_of_index(&self, b: i64) -> Result<MatrixModule> {
        if let Some(m) = self.heller_cache.borrow().get(&b) {
            return Ok(m.clone());
        }
        let m = self.heller(&self.build_m(b)?)?;
        self.heller_cache.borrow_mut().insert(b, m.clone());
        Ok(m)
    }

    fn cover_of_index(&self, c: i64) -> Result<(MatrixModule, Mat)> {
        if let Some(pair) = self.cover_cache.borrow().get(&c) {
            return Ok(pair.clone());
        }
        let pair = self.projective_cover_symbolic(0, c)?;
        self.cover_cache.borrow_mut().insert(c, pair.clone());
        Ok(pair)
    }

    /// dim PHom(X, Y) = dim Hom(X, Y) minus the rank of compositions through
    /// the projective cover of Y.
    pub fn stable_hom_dim_oracle(&self, x: &MatrixModule, y: &MatrixModule) -> Result<usize> {
        let (p, surj) = self.projective_cover(y)?;
        Ok(self.stable_hom_with_cover(x, y, &p, &surj))
    }

    fn stable_hom_with_cover(
        &self,
        x: &MatrixModule,
        y: &MatrixModule,
        p: &MatrixModule,
        surj: &Mat,
    ) -> usize {
        let f = &self.field;
        let homs = self.hom_basis(x, y);
        if homs.is_empty() {
            return 0;
        }
        let through = self.hom_basis(x, p);
        if through.is_empty() {
            return homs.len();
        }
        let cols = x.dim * y.dim;
        let mut images = Mat::zero(cols, through.len());
        for (k, g) in through.iter().enumerate() {
            for (r, &v) in surj.mul(g, f).vec().iter().enumerate() {
                images.set(r, k, v);
            }
        }
        homs.len() - images.rank(f)
    }

    /// dim Ext^1(X, Y) = dim PHom(Omega X, Y).
    pub fn ext1_oracle(&self, x: &MatrixModule, y: &MatrixModule) -> Result<usize> {
        let omega_x = self.heller(x)?;
        self.stable_hom_dim_oracle(&omega_x, y)
    }

    /// Cached symbol-level stable Hom: PHom(U_j M_b, U_jj M_c).
    pub fn stable_hom_symbols(&self, j: i64, b: i64, jj: i64, c: i64) -> Result<usize> {
        let x = self.twist(&self.build_m(b)?, j);
        let y = self.twist(&self.build_m(c)?, jj);
        let (p0, surj) = self.cover_of_index(c)?;
        let p = self.twist(&p0, jj);
        Ok(self.stable_hom_with_cover(&x, &y, &p, &surj))
    }

    /// Cached symbol-level Ext^1: Ext^1(U_j M_b, U_jj M_c).
    pub fn ext1_symbols(&self, j: i64, b: i64, jj: i64, c: i64) -> Result<usize> {
        let omega_x = self.twist(&self.heller_of_index(b)?, j);
        let y = self.twist(&self.build_m(c)?, jj);
        let (p0, surj) = self.cover_of_index(c)?;
        let p = self.twist(&p0, jj);
        Ok(self.stable_hom_with_cover(&omega_x, &y, &p, &surj))
    }

    /// Isomorphism test within the supported family: equal dimension plus an
    /// invertible intertwiner.
    pub fn is_isomorphic(&self, x: &MatrixModule, y: &MatrixModule) -> bool {
        if x.dim != y.dim {
            return false;
        }
        let basis = self.hom_basis(x, y);
        self.full_rank_combo(&basis, x.dim).is_some()
    }

    /// Existence of the non-split SES
    /// U_{-p^(i+1)} M_{b(i')} -> U_{-p^i(p-1-b_i)} M_{b(i-bar)} -> M_b:
    /// an injection with cokernel isomorphic to M_b.
    pub fn verify_ses_ifill(&self, b: i64, i: u32, params_check: bool) -> Result<bool> {
        let params = &self.params;
        let digits = basep::to_digits(b, params)?.digits;
        let bi = digits[i as usize];
        if bi > params.p - 2 {
            return Err(Error::InvalidParams(format!(
                "iFill needs b_{i} <= p-2, got {bi}"
            )));
        }
        let mut partner_digits = digits.clone();
        partner_digits[i as usize] = params.p - 2 - bi;
        let mut completed_digits = digits.clone();
        completed_digits[i as usize] = params.p - 1;
        let b_part = basep::from_digits(&partner_digits, params)?;
        let b_comp = basep::from_digits(&completed_digits, params)?;
        let a = self.twist(&self.build_m(b_part)?, -params.pow(i + 1));
        let mid = self.twist(
            &self.build_m(b_comp)?,
            -params.pow(i) * (params.p as i64 - 1 - bi as i64),
        );
        let quot = self.build_m(b)?;
        if params_check && a.dim + quot.dim != mid.dim {
            return Ok(false);
        }
        let basis = self.hom_basis(&a, &mid);
        let Some(inj) = self.full_rank_combo(&basis, a.dim) else {
            return Ok(false);
        };
        // cokernel: induced action on a complement of the image. Pivots of
        // rref(inj^T) are the coordinates where the column space has pivots;
        // standard vectors at the remaining coordinates complete a basis.
        let f = &self.field;
        let col_pivots = inj.transpose().rref(f);
        let proj_rows: Vec<usize> = (0..mid.dim).filter(|r| !col_pivots.contains(r)).collect();
        let mut complement = Mat::zero(mid.dim, proj_rows.len());
        for (k, &r) in proj_rows.iter().enumerate() {
            complement.set(r, k, 1);
        }
        let full = inj.hstack(&complement);
        if !full.is_invertible(f) {
            return Ok(false);
        }
        let full_inv = full.inverse(f).ok_or(Error::NoSurjectionFound)?;
        let coker_dim = proj_rows.len();
        let induce = |g: &Mat| -> Mat {
            // conjugate into the [image | complement] basis, take the
            // lower-right block
            let conj = full_inv.mul(&g.mul(&full, f), f);
            let mut out = Mat::zero(coker_dim, coker_dim);
            for r in 0..coker_dim {
                for c in 0..coker_dim {
                    out.set(r, c, conj.get(a.dim + r, a.dim + c));
                }
            }
            out
        };
        let coker = MatrixModule {
            dim: coker_dim,
            t: induce(&mid.t),
            us: mid.us.iter().map(induce).collect(),
        };
        Ok(self.is_isomorphic(&coker, &quot))
    }

    /// Startup self-test of the generator conventions. Fails loudly with a
    /// hint to flip the torus exponent sign if the Holloway convention is
    /// violated.
    pub fn check_conventions(&self) -> Result<()> {
        let f = &self.field;
        // conjugation on the natural module: t u_c t^{-1} = u_{alpha^{-2} c}
        let nat = self.sym_power(1);
        let t_inv = nat.t.inverse(f).ok_or(Error::NoSurjectionFound)?;
        for k in 0..self.params.n as usize {
            let lhs = nat.t.mul(&nat.us[k], f).mul(&t_inv, f);
            let rhs = self.u_param(&nat, f.alpha_pow(k as i64 - 2));
            if lhs != rhs {
                return Err(Error::Convention(format!(
                    "t u_(alpha^{k}) t^-1 != u_(alpha^({k}-2)) on the natural module"
                )));
            }
        }
        // sigma(U_i) = U_{pi}
        let u1 = self.build_u(1);
        let up = self.build_u(self.params.p as i64);
        if self.frobenius_twist(&u1).t != up.t {
            return Err(Error::Convention("sigma(U_1) != U_p".into()));
        }
        // head(M_b) = U_b on a couple of indices
        for b in [0, 1.min(self.params.modulus - 1)] {
            let m = self.build_m(b)?;
            let head = self.head(&m);
            if head != vec![(b, 1)] {
                return Err(Error::Convention(format!(
                    "head(M_{b}) = {head:?}, expected U_{b}"
                )));
            }
        }
        Ok(())
    }
}
