use std::fmt;

use serde::{Deserialize, Serialize};

use super::DiffOp;
use crate::exactalg::{DiffRing, Field, Poly, Rat, RatFunc, Ring};
use crate::symgroup::{
    mask_elements, BetheConfig, GroupAlgebraElement, Perm, Sign, SupportedPerm,
};

/// Polynomial in two commuting formal variables `s, t`; `grid[i][j]` is the
/// coefficient of `s^i t^j`. Rows and columns carry no trailing zeros.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhiPoly {
    grid: Vec<Vec<Rat>>,
}

impl PhiPoly {
    pub fn from_grid(grid: Vec<Vec<Rat>>) -> Self {
        let mut p = PhiPoly { grid };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let width = self
            .grid
            .iter()
            .filter_map(|r| r.iter().rposition(|c| !c.is_zero()).map(|k| k + 1))
            .max()
            .unwrap_or(0);
        for r in &mut self.grid {
            r.resize(width, Rat::zero());
        }
        while self.grid.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
            self.grid.pop();
        }
    }

    pub fn zero() -> Self {
        PhiPoly { grid: Vec::new() }
    }

    pub fn one() -> Self {
        PhiPoly::monomial(Rat::one(), 0, 0)
    }

    /// `c s^i t^j`
    pub fn monomial(c: Rat, i: usize, j: usize) -> Self {
        let mut grid = vec![vec![Rat::zero(); j + 1]; i + 1];
        grid[i][j] = c;
        PhiPoly::from_grid(grid)
    }

    pub fn s() -> Self {
        PhiPoly::monomial(Rat::one(), 1, 0)
    }

    pub fn t() -> Self {
        PhiPoly::monomial(Rat::one(), 0, 1)
    }

    /// `prod_i (t^nu_i - s^nu_i)`
    pub fn p_nu(nu: &[usize]) -> Self {
        nu.iter().fold(PhiPoly::one(), |acc, &k| {
            let f = PhiPoly::monomial(Rat::one(), 0, k).sub(&PhiPoly::monomial(Rat::one(), k, 0));
            acc.mul(&f)
        })
    }

    pub fn grid(&self) -> &[Vec<Rat>] {
        &self.grid
    }

    pub fn is_zero(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        self.grid
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn dims(&self) -> (usize, usize) {
        (self.grid.len(), self.grid.first().map_or(0, |r| r.len()))
    }

    pub fn add_term(&mut self, c: &Rat, i: usize, j: usize) {
        let (r, w) = self.dims();
        let (r, w) = (r.max(i + 1), w.max(j + 1));
        self.grid.resize(r, Vec::new());
        for row in &mut self.grid {
            row.resize(w, Rat::zero());
        }
        self.grid[i][j] = self.grid[i][j].clone() + c.clone();
        self.normalize();
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (i, row) in o.grid.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(c, i, j);
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rat::from_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PhiPoly::from_grid(
            self.grid
                .iter()
                .map(|r| r.iter().map(|x| x.clone() * c.clone()).collect())
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PhiPoly::zero();
        }
        let (r1, w1) = self.dims();
        let (r2, w2) = o.dims();
        let mut grid = vec![vec![Rat::zero(); w1 + w2 - 1]; r1 + r2 - 1];
        for (i, ra) in self.grid.iter().enumerate() {
            for (j, a) in ra.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, rb) in o.grid.iter().enumerate() {
                    for (l, b) in rb.iter().enumerate() {
                        if !b.is_zero() {
                            grid[i + k][j + l] =
                                grid[i + k][j + l].clone() + a.clone() * b.clone();
                        }
                    }
                }
            }
        }
        PhiPoly::from_grid(grid)
    }
}

impl fmt::Debug for PhiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, r) in self.grid.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({})s^{}t^{}", c, i, j)?;
            }
        }
        Ok(())
    }
}

/// `Phi(s^i t^j, g) = d^i g d^j`, extended bilinearly.
pub fn phi(p: &PhiPoly, g: &RatFunc) -> DiffOp<RatFunc> {
    let mut acc = DiffOp::zero();
    // d^i g d^j = (sum_m C(i, m) g^(m) d^(i - m)) d^j
    let mut cache: Vec<DiffOp<RatFunc>> = Vec::new();
    for (i, row) in p.grid().iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            while cache.len() <= i {
                cache.push(DiffOp::d_power_times(cache.len(), g));
            }
            let shifted = DiffOp::new(
                std::iter::repeat_with(RatFunc::zero)
                    .take(j)
                    .chain(cache[i].coeffs().iter().map(|x| x.mul_rat(c)))
                    .collect(),
            );
            acc = acc.add(&shifted);
        }
    }
    acc
}

/// `p_{sigma_Z, A}`: signed count of factorizations `sigma = delta epsilon`
/// with `delta` supported in `X`, `epsilon` in `Y`, `X u Y = Z`, `X n Y = A`,
/// weighted by `(-1)^|Y| sgn(epsilon) s^(|Y|-|A|) t^(|X|-|A|)`.
pub fn factorization_poly(sp: &SupportedPerm, a: u32) -> PhiPoly {
    let z = sp.support();
    assert_eq!(a & !z, 0, "A must be a subset of the support");
    let n = sp.perm().n();
    let rest = z & !a;
    let mut p = PhiPoly::zero();
    // X = A u B, Y = A u (rest \ B)
    let mut b = rest;
    loop {
        let x = a | b;
        let y = a | (rest & !b);
        let (nx, ny, na) = (
            x.count_ones() as usize,
            y.count_ones() as usize,
            a.count_ones() as usize,
        );
        let mut weight = 0i64;
        for eps in Perm::all_supported_in(n, y) {
            let delta = sp.perm().compose(&eps.inverse());
            if delta.supported_in(x) {
                weight += eps.sign();
            }
        }
        if weight != 0 {
            if ny % 2 == 1 {
                weight = -weight;
            }
            p.add_term(&Rat::from_int(weight), ny - na, nx - na);
        }
        if b == 0 {
            break;
        }
        b = (b - 1) & rest;
    }
    p
}

/// `q_X = prod_{a in X} 1 / (u + z_a)`
pub fn q_subset(cfg: &BetheConfig<Rat>, x: u32) -> RatFunc {
    RatFunc::recip_poly(&cfg.w_partial(x))
}

/// `F_{sigma_Z} = sum_{A subset Z} Phi(p_{sigma_Z, A}, q_A q_Z)`
pub fn f_operator(sp: &SupportedPerm, cfg: &BetheConfig<Rat>) -> DiffOp<RatFunc> {
    let z = sp.support();
    let qz = q_subset(cfg, z);
    let mut acc = DiffOp::zero();
    let mut a = z;
    loop {
        let p = factorization_poly(sp, a);
        if !p.is_zero() {
            acc = acc.add(&phi(&p, &(q_subset(cfg, a) * qz.clone())));
        }
        if a == 0 {
            break;
        }
        a = (a - 1) & z;
    }
    acc
}

/// Lifts a scalar operator to group-algebra coefficients, `Psi -> Psi sigma`.
pub fn lift(op: &DiffOp<RatFunc>, sigma: &Perm) -> DiffOp<GroupAlgebraElement<RatFunc>> {
    op.map(|c| GroupAlgebraElement::monomial(sigma.clone(), c.clone()))
}

type GaOp = DiffOp<GroupAlgebraElement<RatFunc>>;

/// The Bethe operators written as sums over subsets:
/// `D+ = sum_X d^(n-|X|) q_X alpha+_X`, `D- = sum_Y (-1)^|Y| alpha-_Y q_Y d^(n-|Y|)`.
/// Returned as `(D+, D-)`.
pub fn subset_form(cfg: &BetheConfig<Rat>) -> (GaOp, GaOp) {
    let w = cfg.w();
    subset_form_with(cfg, |p| RatFunc::new(p, w.clone()))
}

/// [`subset_form`] with `p / w` represented by `over_w(p)`; uses
/// `q_X = w_{X^c} / w`.
pub fn subset_form_with<C: DiffRing>(
    cfg: &BetheConfig<Rat>,
    over_w: impl Fn(Poly<Rat>) -> C,
) -> (DiffOp<GroupAlgebraElement<C>>, DiffOp<GroupAlgebraElement<C>>) {
    let n = cfg.n();
    let mut plus = DiffOp::zero();
    let mut minus = DiffOp::zero();
    for x in 0..(1u32 << n) {
        let k = x.count_ones() as usize;
        let wc = cfg.w_partial(cfg.full() & !x);
        let lift = |sign| {
            crate::symgroup::alpha::<Rat>(n, x, sign).map_coeffs(|c| over_w(wc.scale(c)))
        };
        plus = plus.add(&DiffOp::d_power_times(n - k, &lift(Sign::Plus)));
        let mut t = DiffOp::monomial(lift(Sign::Minus), n - k);
        if k % 2 == 1 {
            t = t.neg();
        }
        minus = minus.add(&t);
    }
    (plus, minus)
}

/// `sum_{sigma_Z} d^(n-|Z|) F_{sigma_Z} sigma d^(n-|Z|)` over all supported
/// permutations; terms with vanishing `F` are skipped.
pub fn expansion_sum(cfg: &BetheConfig<Rat>) -> GaOp {
    let n = cfg.n();
    let mut acc = DiffOp::zero();
    for sp in SupportedPerm::enumerate(n) {
        let f = f_operator(&sp, cfg);
        if f.is_zero() {
            continue;
        }
        let k = n - sp.support().count_ones() as usize;
        let core = lift(&f, sp.perm());
        let term = DiffOp::d_power_times(k, &GroupAlgebraElement::scalar(n, RatFunc::one()))
            .mul(&core)
            .mul(&DiffOp::monomial(GroupAlgebraElement::scalar(n, RatFunc::one()), k));
        acc = acc.add(&term);
    }
    acc
}

/// Cycle type of `sigma` restricted to its support, longest first.
pub fn cycle_type_on(sp: &SupportedPerm) -> Vec<usize> {
    let z = sp.support();
    let mut nu: Vec<usize> = sp
        .perm()
        .cycles()
        .into_iter()
        .filter(|c| c.iter().all(|&i| z & (1 << i) != 0))
        .map(|c| c.len())
        .collect();
    nu.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(nu.iter().sum::<usize>(), mask_elements(z).count());
    nu
}
