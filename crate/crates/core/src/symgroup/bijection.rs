//! The weight-preserving bijection behind the commutativity of the Bethe
//! generators, built from two deterministic choice functions.

use serde::{Deserialize, Serialize};

use super::{subsets_of_size, Perm, SupportedPerm, SymError};

/// Cycle breaking. Returns `pi` in S_{[n] \ Z}, moving only non-fixed points
/// of `tau`, such that every cycle of `pi * tau` meets the complement of `Z`
/// in at most one point.
///
/// Rule: for each cycle of `tau` with outside points `b_1, .., b_r` (r >= 2)
/// in cycle order from its smallest element, `pi` sends `b_{i+1} -> b_i`
/// (indices mod r). Then `pi * tau` closes each segment `b_i .. (before
/// b_{i+1})` into its own cycle.
pub fn break_cycles(tau: &Perm, z: u32) -> Perm {
    let n = tau.n();
    let mut img: Vec<usize> = (0..n).collect();
    for cycle in tau.cycles() {
        let outside: Vec<usize> = cycle.iter().copied().filter(|&i| z & (1 << i) == 0).collect();
        let r = outside.len();
        if r < 2 {
            continue;
        }
        for i in 0..r {
            img[outside[(i + 1) % r]] = outside[i];
        }
    }
    Perm::from_images(img).expect("cycle on distinct points")
}

/// Reflection. For `tau_hat` whose cycles each contain at most one point
/// outside `Z`, returns the involution `xi` in S_Z fixing every fixed point
/// of `tau_hat` with `xi * tau_hat^-1 * xi = tau_hat`.
///
/// Rule: each cycle `(a_0 a_1 .. a_{k-1})` is anchored at its outside point,
/// or at its smallest element when it lies inside `Z`, and `xi` maps
/// `a_j -> a_{-j mod k}`.
pub fn reflect_involution(tau_hat: &Perm, z: u32) -> Result<Perm, SymError> {
    let n = tau_hat.n();
    let mut img: Vec<usize> = (0..n).collect();
    for cycle in tau_hat.cycles() {
        let outside: Vec<usize> = cycle.iter().copied().filter(|&i| z & (1 << i) == 0).collect();
        if outside.len() > 1 {
            return Err(SymError::Precondition(format!(
                "cycle {:?} of {} has {} points outside the support",
                cycle.iter().map(|i| i + 1).collect::<Vec<_>>(),
                tau_hat,
                outside.len()
            )));
        }
        let start = outside
            .first()
            .map(|o| cycle.iter().position(|c| c == o).unwrap())
            .unwrap_or(0);
        let k = cycle.len();
        for j in 0..k {
            img[cycle[(start + j) % k]] = cycle[(start + k - j) % k];
        }
    }
    Ok(Perm::from_images(img).expect("reflection is a permutation"))
}

/// The composite `xi_hat = pi * xi` attached to `(tau, Z)`.
pub fn xi_hat(tau: &Perm, z: u32) -> Perm {
    let pi = break_cycles(tau, z);
    let tau_hat = pi.compose(tau);
    let xi = reflect_involution(&tau_hat, z).expect("cycle breaking leaves one outside point");
    pi.compose(&xi)
}

/// An element `(sigma_X, Y)` of `B_{k,l}`: a supported permutation and a set
/// `Y` disjoint from its support, with `k = |X|`, `l = |Y|`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BElement {
    pub sigma: SupportedPerm,
    pub y: u32,
}

impl BElement {
    pub fn new(sigma: SupportedPerm, y: u32) -> Result<Self, SymError> {
        if sigma.support() & y != 0 {
            return Err(SymError::Precondition("Y meets the support".into()));
        }
        Ok(BElement { sigma, y })
    }

    pub fn k(&self) -> usize {
        self.sigma.support().count_ones() as usize
    }

    pub fn l(&self) -> usize {
        self.y.count_ones() as usize
    }
}

/// All of `B_{k,l}` for degree `n`.
pub fn enumerate_b(n: usize, k: usize, l: usize) -> Vec<BElement> {
    let full = ((1u64 << n) - 1) as u32;
    let mut out = Vec::new();
    if k + l > n {
        return out;
    }
    for x in subsets_of_size(n, k) {
        let ys: Vec<u32> = subsets_of_size(n, l).into_iter().filter(|y| y & x == 0 && y & !full == 0).collect();
        for p in Perm::all_supported_in(n, x) {
            for &y in &ys {
                out.push(BElement {
                    sigma: SupportedPerm::new(p.clone(), x).unwrap(),
                    y,
                });
            }
        }
    }
    out
}

fn conj(a: &Perm, s: &Perm, b: &Perm) -> Perm {
    a.compose(s).compose(b)
}

/// The bijection `B_{k,l} x B_{k',n-k'} -> B_{k',n-k'} x B_{k,l}`.
///
/// With `Z = Y u Y'`, `tau = sigma sigma'` and `h = xi_hat(tau, Z)`, the image
/// is `(h^-1 sigma'^-1 h^-1 on h(X'), h(Y') ; h sigma^-1 h^-1 on h(X), h(Y))`.
pub fn rho(first: &BElement, second: &BElement) -> Result<(BElement, BElement), SymError> {
    let n = second.sigma.perm().n();
    if first.sigma.perm().n() != n {
        return Err(SymError::Precondition("degree mismatch".into()));
    }
    if second.k() + second.l() != n {
        return Err(SymError::Precondition(
            "second factor must lie in B_{k', n - k'}".into(),
        ));
    }
    let (s, sp) = (first.sigma.perm(), second.sigma.perm());
    let z = first.y | second.y;
    let tau = s.compose(sp);
    let h = xi_hat(&tau, z);
    let hi = h.inverse();
    let bar_sp = conj(&hi, &sp.inverse(), &hi);
    let bar_s = conj(&h, &s.inverse(), &hi);
    let out1 = BElement::new(
        SupportedPerm::new(bar_sp, h.image_of(second.sigma.support()))?,
        h.image_of(second.y),
    )?;
    let out2 = BElement::new(
        SupportedPerm::new(bar_s, h.image_of(first.sigma.support()))?,
        h.image_of(first.y),
    )?;
    Ok((out1, out2))
}

/// Inverse of [`rho`]: the same `xi_hat` is recovered from the image since
/// `Z` and `tau` are preserved.
pub fn rho_inverse(first: &BElement, second: &BElement) -> Result<(BElement, BElement), SymError> {
    let (bsp, bs) = (first.sigma.perm(), second.sigma.perm());
    let z = first.y | second.y;
    let tau = bsp.compose(bs);
    let h = xi_hat(&tau, z);
    let hi = h.inverse();
    // bar_s = h s^-1 h^-1  =>  s = h^-1 bar_s^-1 h
    let s = conj(&hi, &bs.inverse(), &h);
    // bar_sp = h^-1 sp^-1 h^-1  =>  sp = h^-1 bar_sp^-1 h^-1
    let sp = conj(&hi, &bsp.inverse(), &hi);
    let orig1 = BElement::new(
        SupportedPerm::new(s, hi.image_of(second.sigma.support()))?,
        hi.image_of(second.y),
    )?;
    let orig2 = BElement::new(
        SupportedPerm::new(sp, hi.image_of(first.sigma.support()))?,
        hi.image_of(first.y),
    )?;
    Ok((orig1, orig2))
}

/// Weight of a term `sgn(sigma') sigma sigma' z_Y z_Y'` as comparable data:
/// (product permutation, multiplicity of each z_i, sign of the signed factor).
pub type TermWeight = (Perm, Vec<u8>, i64);

pub fn z_multiplicities(n: usize, a: u32, b: u32) -> Vec<u8> {
    (0..n)
        .map(|i| ((a >> i) & 1) as u8 + ((b >> i) & 1) as u8)
        .collect()
}

/// Summary of the exhaustive bijection check for one `(k, l, k')`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub k_prime: usize,
    pub domain_size: usize,
    pub injective: bool,
    pub weight_preserving: bool,
    pub inverse_round_trip: bool,
    pub multisets_match: bool,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.injective && self.weight_preserving && self.inverse_round_trip && self.multisets_match
    }
}

/// Runs `rho` on all of `B_{k,l} x B_{k',n-k'}` and compares the two sides
/// of the commutation identity `beta^+_{k,l} beta^-_{k',n-k'} =
/// beta^-_{k',n-k'} beta^+_{k,l}` term by term.
pub fn check_bijection(n: usize, k: usize, l: usize, kp: usize) -> Result<BijectionReport, SymError> {
    use std::collections::{BTreeMap, HashSet};
    let left = enumerate_b(n, k, l);
    let right = enumerate_b(n, kp, n - kp);
    let mut images = HashSet::new();
    let mut weight_ok = true;
    let mut inverse_ok = true;
    let mut lhs: BTreeMap<TermWeight, usize> = BTreeMap::new();
    for a in &left {
        for b in &right {
            let (c, d) = rho(a, b)?;
            let tau = a.sigma.perm().compose(b.sigma.perm());
            let zs = z_multiplicities(n, a.y, b.y);
            let w_in: TermWeight = (tau, zs, b.sigma.perm().sign());
            let w_out: TermWeight = (
                c.sigma.perm().compose(d.sigma.perm()),
                z_multiplicities(n, c.y, d.y),
                c.sigma.perm().sign(),
            );
            if w_in != w_out || a.sigma.perm().sign() != d.sigma.perm().sign() {
                weight_ok = false;
            }
            if c.k() != kp || c.l() != n - kp || d.k() != k || d.l() != l {
                weight_ok = false;
            }
            if rho_inverse(&c, &d)? != (a.clone(), b.clone()) {
                inverse_ok = false;
            }
            *lhs.entry(w_in).or_default() += 1;
            images.insert((c, d));
        }
    }
    let domain = left.len() * right.len();
    let mut rhs: BTreeMap<TermWeight, usize> = BTreeMap::new();
    for c in &right {
        for d in &left {
            let w: TermWeight = (
                c.sigma.perm().compose(d.sigma.perm()),
                z_multiplicities(n, c.y, d.y),
                c.sigma.perm().sign(),
            );
            *rhs.entry(w).or_default() += 1;
        }
    }
    Ok(BijectionReport {
        n,
        k,
        l,
        k_prime: kp,
        domain_size: domain,
        injective: images.len() == domain,
        weight_preserving: weight_ok,
        inverse_round_trip: inverse_ok,
        multisets_match: lhs == rhs,
    })
}

/// [`check_bijection`] for every `(k, l, k')` with `k + l <= n`.
pub fn check_all_bijections(n: usize) -> Result<Vec<BijectionReport>, SymError> {
    let mut out = Vec::new();
    for k in 0..=n {
        for l in 0..=n - k {
            for kp in 0..=n {
                out.push(check_bijection(n, k, l, kp)?);
            }
        }
    }
    Ok(out)
}

/// Whether `pi` fixes every fixed point of `tau`.
pub fn precedes(pi: &Perm, tau: &Perm) -> bool {
    pi.moved() & !tau.moved() == 0
}

/// Post-condition of [`break_cycles`].
pub fn cycles_split(pi: &Perm, tau: &Perm, z: u32) -> bool {
    pi.supported_in(!z)
        && precedes(pi, tau)
        && pi
            .compose(tau)
            .cycles()
            .iter()
            .all(|c| c.iter().filter(|&&i| z & (1 << i) == 0).count() <= 1)
}

/// Post-condition of [`reflect_involution`].
pub fn is_reflection(xi: &Perm, tau_hat: &Perm, z: u32) -> bool {
    xi.compose(xi).is_identity()
        && xi.supported_in(z)
        && precedes(xi, tau_hat)
        && conj(xi, &tau_hat.inverse(), xi) == *tau_hat
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[usize]) -> Perm {
        // 1-based cycle
        let c0: Vec<usize> = c.iter().map(|i| i - 1).collect();
        Perm::from_cycles(n, &[&c0])
    }

    fn mask(s: &[usize]) -> u32 {
        s.iter().fold(0, |m, i| m | 1 << (i - 1))
    }

    #[test]
    fn break_cycles_examples() {
        assert!(break_cycles(&cyc(3, &[1, 2, 3]), mask(&[1, 2, 3])).is_identity());
        assert!(break_cycles(&cyc(3, &[1, 2, 3]), mask(&[2, 3])).is_identity());
        let tau = cyc(4, &[1, 2, 3, 4]);
        let z = mask(&[2, 4]);
        let pi = break_cycles(&tau, z);
        assert!(cycles_split(&pi, &tau, z));
        // brute force oracle: some element of S_{1,3} works, and ours is one
        let oracle: Vec<Perm> = Perm::all_supported_in(4, mask(&[1, 3]))
            .into_iter()
            .filter(|p| cycles_split(p, &tau, z))
            .collect();
        assert!(oracle.contains(&pi));
    }

    #[test]
    fn reflect_examples() {
        assert!(reflect_involution(&Perm::identity(3), 0).unwrap().is_identity());
        let t = cyc(3, &[1, 2, 3]);
        assert_eq!(reflect_involution(&t, mask(&[1, 2, 3])).unwrap(), cyc(3, &[2, 3]));
        assert_eq!(reflect_involution(&t, mask(&[2, 3])).unwrap(), cyc(3, &[2, 3]));
        assert!(reflect_involution(&t, mask(&[2])).is_err());
    }

    #[test]
    fn choice_functions_exhaustive_up_to_five() {
        for n in 1..=5 {
            let full = (1u32 << n) - 1;
            for tau in Perm::all(n) {
                for z in 0..=full {
                    let pi = break_cycles(&tau, z);
                    assert!(cycles_split(&pi, &tau, z), "{tau} {z:b}");
                    let th = pi.compose(&tau);
                    let xi = reflect_involution(&th, z).unwrap();
                    assert!(is_reflection(&xi, &th, z), "{th} {z:b}");
                    assert!(precedes(&pi.compose(&xi), &tau));
                }
            }
        }
    }

    #[test]
    fn identity_pairs_map_to_themselves() {
        let n = 3;
        let a = BElement::new(SupportedPerm::new(Perm::identity(n), 0b001).unwrap(), 0b010).unwrap();
        let b = BElement::new(SupportedPerm::new(Perm::identity(n), 0b011).unwrap(), 0b100).unwrap();
        let (c, d) = rho(&a, &b).unwrap();
        assert_eq!((c, d), (b, a));
    }

    #[test]
    fn full_sweep_up_to_four() {
        for n in 1..=4 {
            let all = check_all_bijections(n).unwrap();
            assert_eq!(all.len(), (n + 1) * (n + 2) / 2 * (n + 1));
            for r in &all {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn bijection_small_cases() {
        let r = check_bijection(3, 1, 1, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = check_bijection(4, 2, 1, 2).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
