//! Named verification suites with seeded inputs and JSON reports.
//!
//! Each suite accepts a `fault` switch that perturbs one constant on the
//! computed side, so that a suite which cannot fail is caught by tests.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bethe::coeffs::{bethe_matrices_at, first_noncommuting, intertwining_failure, verify_zb_sample, BetheCoeffs};
use crate::bethe::V1Element;
use crate::bipoly::BiPoly;
use crate::cherednik::dunkl::DunklRep;
use crate::cherednik::spherical::spherical_poly;
use crate::cherednik::{check_bound, universal_central_poly, HElement};
use crate::cm::{charpoly, cm_psi, cm_universal_poly, generic_cm_point, CmPoint};
use crate::error::{Error, Result};
use crate::golden::n2_golden;
use crate::matrix::Matrix;
use crate::multisym::power_sum;
use crate::perm::Perm;
use crate::poly::{Poly, VarSet};
use crate::quasiexp::{wilson_check, wilson_h, QExpSpace};
use crate::random::Sampler;
use crate::rational::{self, Q};
use crate::ring::Ring;
use crate::series::expand_rational;

/// Truncation order of every series comparison.
pub const SERIES_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Zb,
    Satake,
    Wilson,
    BetheComm,
    Dunkl,
    N2Golden,
    Multisym,
    CmIdentity,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::Zb, Suite::Satake, Suite::Wilson, Suite::BetheComm, Suite::Dunkl, Suite::N2Golden, Suite::Multisym, Suite::CmIdentity];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Zb => "zb",
            Suite::Satake => "satake",
            Suite::Wilson => "wilson",
            Suite::BetheComm => "bethe-comm",
            Suite::Dunkl => "dunkl",
            Suite::N2Golden => "n2-golden",
            Suite::Multisym => "multisym",
            Suite::CmIdentity => "cm-identity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub trials: usize,
    pub passed: bool,
    pub first_failure: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub fault: bool,
}

/// Runs `suite`. Errors are reserved for bad input (such as `N` over the
/// bound); a failed identity is reported through [`Report::passed`].
pub fn run(suite: Suite, cfg: &Config) -> Result<Report> {
    let failure = match suite {
        Suite::Zb => zb(cfg)?,
        Suite::Satake => satake(cfg)?,
        Suite::Wilson => wilson(cfg)?,
        Suite::BetheComm => bethe_comm(cfg)?,
        Suite::Dunkl => dunkl(cfg)?,
        Suite::N2Golden => {
            let r = n2_golden(cfg.fault)?;
            if r.accounted() {
                None
            } else {
                r.first_problem()
            }
        }
        Suite::Multisym => multisym(cfg)?,
        Suite::CmIdentity => cm_identity(cfg)?,
    };
    let n = if suite == Suite::N2Golden { 2 } else { cfg.n };
    Ok(Report { suite: suite.name().into(), n, trials: cfg.trials, passed: failure.is_none(), first_failure: failure })
}

fn perturb_constant(p: &BiPoly<HElement>, n: usize) -> BiPoly<HElement> {
    let mut out = p.clone();
    out.add_term(0, 0, HElement::one(n));
    out
}

fn zb(cfg: &Config) -> Result<Option<String>> {
    let n = cfg.n;
    check_bound(n)?;
    let bc = BetheCoeffs::compute(n)?;
    let mut pz = universal_central_poly(n)?;
    if cfg.fault {
        pz = perturb_constant(&pz, n);
    }
    let mut s = Sampler::new(cfg.seed);
    let mut samples: Vec<V1Element> = Perm::all(n).iter().map(V1Element::basis).collect();
    samples.extend((0..cfg.trials).map(|_| s.v1_monomial(n, 2)));
    for v in &samples {
        if let Some((a, b)) = verify_zb_sample(&bc, &pz, v)? {
            return Ok(Some(format!("iota P^B != P^Z iota at u^{a} v^{b} on {}", serde_json::to_string(&v.to_json()).unwrap())));
        }
    }
    Ok(None)
}

fn satake(cfg: &Config) -> Result<Option<String>> {
    let n = cfg.n;
    check_bound(n)?;
    let mut pz = universal_central_poly(n)?;
    if cfg.fault {
        pz = perturb_constant(&pz, n);
    }
    let pu = spherical_poly(n)?;
    let e = HElement::symmetrizer(n);
    for a in 0..=n as u32 {
        for b in 0..=n as u32 {
            if pz.coeff(a, b).h_mul(&e)? != pu.coeff(a, b) {
                return Ok(Some(format!("P^Z e != P^U at u^{a} v^{b}")));
            }
            if e.h_mul(&pu.coeff(a, b))? != pu.coeff(a, b) {
                return Ok(Some(format!("e P^U != P^U at u^{a} v^{b}")));
            }
        }
    }
    Ok(None)
}

fn wilson(cfg: &Config) -> Result<Option<String>> {
    let n = cfg.n;
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let mut s = Sampler::new(cfg.seed);
    for _ in 0..cfg.trials {
        let l0 = s.distinct_rationals(n);
        let d = s.rationals(n);
        let p = generic_cm_point(&l0, &d)?;
        let mut h = wilson_h(&l0, &d);
        if cfg.fault {
            h[0] += rational::one();
        }
        let w = QExpSpace::generic(&h, &l0)?;
        let c = wilson_check(&p, &w, SERIES_ORDER)?;
        if !c.ok() {
            let show = |v: &[Q]| v.iter().map(rational::to_string).collect::<Vec<_>>().join(", ");
            return Ok(Some(format!("{c:?} at l0 = [{}], d = [{}]", show(&l0), show(&d))));
        }
    }
    Ok(None)
}

fn bethe_comm(cfg: &Config) -> Result<Option<String>> {
    let n = cfg.n;
    check_bound(n)?;
    let bump = |m: &mut Matrix<Q>| {
        let x = m.get(0, 1).clone() + rational::one();
        m.set(0, 1, x);
    };
    if n <= 3 {
        let bc = BetheCoeffs::compute(n)?;
        let mut mats: Vec<((u32, u32), Matrix<Poly>)> = bc.by_degree.into_iter().collect();
        if cfg.fault && n >= 2 {
            let m = &mut mats.iter_mut().find(|(k, _)| *k == (1, 0)).unwrap().1;
            let x = m.get(0, 1).add(&Poly::one(&VarSet::zl(n)));
            m.set(0, 1, x);
        }
        return Ok(first_noncommuting(&mats).map(|(a, b)| format!("[b(u^{}v^{}), b(u^{}v^{})] != 0 symbolically", a.0, a.1, b.0, b.1)));
    }
    let mut s = Sampler::new(cfg.seed);
    for _ in 0..cfg.trials {
        let (z0, l0) = (s.rationals(n), s.rationals(n));
        let mut all = bethe_matrices_at(&z0, &l0);
        if cfg.fault {
            bump(all.get_mut(&(1, 0)).unwrap());
        }
        let mats: Vec<((u32, u32), Matrix<Q>)> = all.into_iter().filter(|(_, m)| !is_scalar(m)).collect();
        if let Some((a, b)) = first_noncommuting(&mats) {
            let show = |v: &[Q]| v.iter().map(rational::to_string).collect::<Vec<_>>().join(", ");
            return Ok(Some(format!(
                "[b(u^{}v^{}), b(u^{}v^{})] != 0 at z = [{}], l = [{}]",
                a.0,
                a.1,
                b.0,
                b.1,
                show(&z0),
                show(&l0)
            )));
        }
    }
    Ok(None)
}

/// Scalar matrices commute with everything and are skipped.
fn is_scalar(m: &Matrix<Q>) -> bool {
    let d = m.get(0, 0);
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| if i == j { m.get(i, j) == d } else { m.get(i, j).is_zero() }))
}

fn dunkl(cfg: &Config) -> Result<Option<String>> {
    let n = cfg.n;
    check_bound(n)?;
    let rep = if cfg.fault { DunklRep::perturbed(n) } else { DunklRep::exact(n) };
    let vars = VarSet::zl(n);
    let mut s = Sampler::new(cfg.seed);
    for _ in 0..cfg.trials {
        let p = s.poly(&vars, 3, 4);
        if let Some(rel) = rep.failing_relation(&p)? {
            return Ok(Some(format!("relation {rel} fails on {p}")));
        }
        if let Some(i) = intertwining_failure(&p)? {
            return Ok(Some(format!("(pr iota^-1) y{} != K{} (pr iota^-1) on {p}", i + 1, i + 1)));
        }
    }
    Ok(None)
}

fn multisym(cfg: &Config) -> Result<Option<String>> {
    let n = cfg.n;
    check_bound(n)?;
    for (k, r) in crate::multisym::recover_power_sums(n, 3)?.into_iter().enumerate() {
        let mut target = power_sum(r.k, r.l, n);
        if cfg.fault && k == 0 {
            target = target.add(&Poly::one(&VarSet::zl(n)));
        }
        if r.substituted != target {
            return Ok(Some(format!("sum l^{} z^{} is not recovered", r.k, r.l)));
        }
    }
    Ok(None)
}

fn random_cm_point(s: &mut Sampler, n: usize) -> Result<CmPoint> {
    let p = generic_cm_point(&s.distinct_rationals(n), &s.rationals(n))?;
    p.conjugate(&s.invertible(n))
}

fn cm_identity(cfg: &Config) -> Result<Option<String>> {
    let n = cfg.n;
    check_bound(n)?;
    let order = SERIES_ORDER;
    let mut s = Sampler::new(cfg.seed);
    for _ in 0..cfg.trials {
        let p = random_cm_point(&mut s, n)?;
        let mut pc = cm_universal_poly(&p)?;
        if cfg.fault {
            pc.add_term(0, 0, rational::one());
        }
        let psi = cm_psi(&p, order)?;
        let show = || serde_json::to_string(&p.to_json()).unwrap();
        if expand_rational(&pc, &charpoly(p.z())?, &charpoly(p.l())?, order, &rational::zero())? != psi {
            return Ok(Some(format!("Psi^C det(u-Z) det(v-L) != P^C at {}", show())));
        }
        let q = p.conjugate(&s.invertible(n))?;
        if cm_universal_poly(&q)? != pc {
            return Ok(Some(format!("P^C not conjugation invariant at {}", show())));
        }
        if cm_psi(&q, order)? != psi {
            return Ok(Some(format!("Psi^C not conjugation invariant at {}", show())));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_faults_fail() {
        for suite in Suite::ALL {
            let cfg = Config { n: 2, seed: 0, trials: 3, fault: false };
            let r = run(suite, &cfg).unwrap();
            assert!(r.passed, "{suite}: {:?}", r.first_failure);
            let r = run(suite, &Config { fault: true, ..cfg }).unwrap();
            assert!(!r.passed, "{suite} missed the injected fault");
        }
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
