//! The complete `N = 2` example: every displayed formula, transcribed to
//! ASCII, compared with the computed objects.
//!
//! Transcription conventions: `l` for lambda, `L` for capital Lambda,
//! `trZ`, `detL`, `trLZ` for `tr(Z)`, `det(Λ)`, `tr(ΛZ)`, `detLZ` for
//! `det(ΛZ)`, and explicit `*` where two multi-letter names meet. One
//! unbalanced parenthesis in the `u` coefficient of `P^Z` is balanced.
//!
//! Displays that disagree with the computation are listed in [`ERRATA`]
//! with a corrected form; each correction is backed by an independent check
//! in [`GoldenReport::certificates`].

use std::sync::Arc;

use crate::bethe::coeffs::{verify_zb, BetheCoeffs};
use crate::bethe::oracle::{n2_display, rdet_oracle};
use crate::bethe::{iota, iota_inv, V1Element};
use crate::bipoly::BiPoly;
use crate::cherednik::central::n2_relations;
use crate::cherednik::{CentralCoeffs, HElement};
use crate::cm::{charpoly, cm_psi, cm_universal_poly, generic_cm_point, CmPoint};
use crate::error::Result;
use crate::expr;
use crate::matrix::RatMatrix;
use crate::perm::Perm;
use crate::poly::{Mono, Poly, VarSet};
use crate::random::Sampler;
use crate::rational::{self, Q};
use crate::ring::Ring;
use crate::series::expand_rational;

/// A display that does not hold as printed, with its replacement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub object: &'static str,
    pub slot: &'static str,
    pub display: &'static str,
    pub corrected: &'static str,
    pub note: &'static str,
}

pub const ERRATA: &[Erratum] = &[
    Erratum {
        object: "Z2 generators",
        slot: "T",
        display: "x1y1+x2y2-s12",
        corrected: "x1y1+x2y2+s12",
        note: "printed T is not central: [x1, T] = 2(x2 - x1)s12; the constant term of P^Z is 1 + h1h2 - (x1y1+x2y2+s12)",
    },
    Erratum {
        object: "B2 generators",
        slot: "T[1,2]",
        display: "-1",
        corrected: "1",
        note: "image of the central T on V_1; the printed matrix is the image of the printed, non-central T",
    },
    Erratum {
        object: "B2 generators",
        slot: "T[2,1]",
        display: "-1",
        corrected: "1",
        note: "as T[1,2]",
    },
    Erratum {
        object: "P^B",
        slot: "v^0[1,1]",
        display: "1+l1l2z1z2-(l1z1+l2z2)",
        corrected: "1+l1(u-z1)+l2(u-z2)+l1l2(u-z1)(u-z2)",
        note: "display keeps only the u^0 part of the v^0 coefficient",
    },
    Erratum {
        object: "P^B",
        slot: "v^0[2,2]",
        display: "1+l1l2z1z2-(l1z2+l2z1)",
        corrected: "1+l1(u-z2)+l2(u-z1)+l1l2(u-z1)(u-z2)",
        note: "as v^0[1,1]",
    },
    Erratum {
        object: "P^B",
        slot: "v^0[1,2]",
        display: "-(-1)",
        corrected: "-1",
        note: "the sign inherited from the printed T; the closed form sends eps_id to -eps_s12 at u^0 v^0",
    },
    Erratum {
        object: "P^B",
        slot: "v^0[2,1]",
        display: "-(-1)",
        corrected: "-1",
        note: "as v^0[1,2]",
    },
    Erratum {
        object: "P^C",
        slot: "v^1u^1",
        display: "trL*trZ",
        corrected: "trL*trZ-2",
        note: "the -2 of the P^Z display is dropped",
    },
    Erratum {
        object: "P^C",
        slot: "v^1u^0",
        display: "detL*trZ-trL",
        corrected: "trZ-trL*detZ",
        note: "u and v coefficients swapped and negated",
    },
    Erratum {
        object: "P^C",
        slot: "v^0u^1",
        display: "detZ*trL-trZ",
        corrected: "trL-detL*trZ",
        note: "as v^1u^0",
    },
    Erratum {
        object: "relation",
        slot: "R",
        display: "T^2-h1g1T+(g1^2-2g2)h2+(h1^2-2h2)g2-1",
        corrected: "T^2-g1g2T+g1^2h2-4h1h2+g2^2h1-1",
        note: "the display holds once g2 and h1 are read as x1x2 and y1+y2 (and T is corrected); corrected form is in the printed generator order",
    },
];

pub fn erratum(object: &str, slot: &str) -> Option<&'static Erratum> {
    ERRATA.iter().find(|e| e.object == object && e.slot == slot)
}

/// `P^Z` coefficients as `(deg_v, deg_u, display)`.
const PZ: &[(u32, u32, &str)] = &[
    (2, 2, "1"),
    (2, 1, "-(y1+y2)"),
    (1, 2, "-(x1+x2)"),
    (2, 0, "y1y2"),
    (0, 2, "x1x2"),
    (1, 1, "(x1+x2)(y1+y2)-2"),
    (1, 0, "-((x1+x2)y1y2-(y1+y2))"),
    (0, 1, "-(x1x2(y1+y2)-(x1+x2))"),
    (0, 0, "1+x1x2y1y2-x1y1-x2y2-s12"),
];

/// `P^C` coefficients as `(deg_v, deg_u, display)`.
const PC: &[(u32, u32, &str)] = &[
    (2, 2, "1"),
    (2, 1, "-trZ"),
    (1, 2, "-trL"),
    (2, 0, "detZ"),
    (0, 2, "detL"),
    (1, 1, "trL*trZ"),
    (1, 0, "detL*trZ-trL"),
    (0, 1, "detZ*trL-trZ"),
    (0, 0, "1+detLZ-trLZ"),
];

/// `P^B` as `(deg_v, row, col, display)`, basis `{eps_id, eps_s12}`.
const PB: &[(u32, usize, usize, &str)] = &[
    (2, 0, 0, "(u-z1)(u-z2)"),
    (2, 1, 1, "(u-z1)(u-z2)"),
    (2, 0, 1, "0"),
    (2, 1, 0, "0"),
    (1, 0, 0, "-((l1+l2)(u-z1)(u-z2)+2u-z1-z2)"),
    (1, 1, 1, "-((l1+l2)(u-z1)(u-z2)+2u-z1-z2)"),
    (1, 0, 1, "0"),
    (1, 1, 0, "0"),
    (0, 0, 0, "1+l1l2z1z2-(l1z1+l2z2)"),
    (0, 1, 1, "1+l1l2z1z2-(l1z2+l2z1)"),
    (0, 0, 1, "-(-1)"),
    (0, 1, 0, "-(-1)"),
];

const Z_GENERATORS: [(&str, &str); 5] =
    [("g1", "x1+x2"), ("g2", "y1+y2"), ("h1", "x1x2"), ("h2", "y1y2"), ("T", "x1y1+x2y2-s12")];

const B_T: [[&str; 2]; 2] = [["l1z1+l2z2", "-1"], ["-1", "l1z2+l2z1"]];

const RELATION: &str = "T^2-h1g1T+(g1^2-2g2)h2+(h1^2-2h2)g2-1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryResult {
    pub object: &'static str,
    pub slot: String,
    pub display: &'static str,
    pub verbatim: bool,
    /// Outcome for the corrected form when the slot is listed in [`ERRATA`].
    pub corrected: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenReport {
    pub entries: Vec<EntryResult>,
    pub certificates: Vec<(&'static str, bool)>,
}

impl GoldenReport {
    pub fn verbatim_matches(&self) -> usize {
        self.entries.iter().filter(|e| e.verbatim).count()
    }

    pub fn mismatches(&self) -> Vec<&EntryResult> {
        self.entries.iter().filter(|e| !e.verbatim).collect()
    }

    /// Every display either holds verbatim or is a listed erratum whose
    /// corrected form holds, no listed erratum holds verbatim, and all
    /// certificates pass.
    pub fn accounted(&self) -> bool {
        self.entries.iter().all(|e| match e.corrected {
            None => e.verbatim,
            Some(c) => !e.verbatim && c,
        }) && self.certificates.iter().all(|(_, ok)| *ok)
            && ERRATA.iter().all(|x| self.entries.iter().any(|e| e.object == x.object && e.slot == x.slot))
    }

    pub fn first_problem(&self) -> Option<String> {
        for e in &self.entries {
            match e.corrected {
                None if !e.verbatim => return Some(format!("{} {}: display {:?} does not match", e.object, e.slot, e.display)),
                Some(false) => return Some(format!("{} {}: corrected form does not match", e.object, e.slot)),
                Some(true) if e.verbatim => return Some(format!("{} {}: listed erratum holds verbatim", e.object, e.slot)),
                _ => {}
            }
        }
        self.certificates.iter().find(|(_, ok)| !ok).map(|(name, _)| format!("certificate failed: {name}"))
    }
}

fn entry(object: &'static str, slot: String, display: &'static str, check: impl Fn(&str) -> Result<bool>) -> Result<EntryResult> {
    let verbatim = check(display)?;
    let corrected = match erratum(object, &slot) {
        Some(e) => Some(check(e.corrected)?),
        None => None,
    };
    Ok(EntryResult { object, slot, display, verbatim, corrected })
}

fn h2_lookup(name: &str) -> Option<HElement> {
    Some(match name {
        "x1" => HElement::x(2, 0),
        "x2" => HElement::x(2, 1),
        "y1" => HElement::y(2, 0),
        "y2" => HElement::y(2, 1),
        "s12" => HElement::s(2, 0, 1),
        _ => return None,
    })
}

fn h2(s: &str) -> Result<HElement> {
    expr::eval(s, &HElement::one(2), h2_lookup)
}

fn uzl_vars() -> Arc<VarSet> {
    VarSet::new(["u", "z1", "z2", "l1", "l2"])
}

fn uzl(s: &str) -> Result<Poly> {
    let vars = uzl_vars();
    expr::eval(s, &Poly::one(&vars), |n| vars.index(n).map(|i| Poly::var(&vars, i)))
}

/// Entry `(r, c)` of the `v^b` coefficient of `P^B`, as a polynomial in
/// `u, z, l`.
fn pb_entry(bc: &BetheCoeffs, b: u32, r: usize, c: usize) -> Poly {
    let vars = uzl_vars();
    let mut out = Poly::zero(&vars);
    for (&(a, bb), m) in &bc.by_degree {
        if bb != b {
            continue;
        }
        for (mono, x) in m.get(r, c).terms() {
            let mut e = vec![a as u16];
            e.extend_from_slice(mono.exps());
            out.add_term(Mono::from_exps(&e), x.clone());
        }
    }
    out
}

/// Evaluation data of a CM point for the `P^C` display.
fn cm_values(p: &CmPoint) -> Vec<(&'static str, Q)> {
    let (z, l) = (p.z(), p.l());
    let det2 = |m: &RatMatrix| m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
    let lz = l.mul(z);
    vec![("trZ", z.trace()), ("trL", l.trace()), ("detZ", det2(z)), ("detL", det2(l)), ("trLZ", lz.trace()), ("detLZ", det2(&lz))]
}

fn cm_eval(s: &str, vals: &[(&str, Q)]) -> Result<Q> {
    expr::eval(s, &rational::one(), |n| vals.iter().find(|(k, _)| *k == n).map(|(_, v)| v.clone()))
}

/// Fixed N = 2 CM points: generic points and their conjugates.
fn cm_points() -> Result<Vec<CmPoint>> {
    let mut s = Sampler::new(2);
    let mut out = Vec::new();
    for _ in 0..4 {
        let p = generic_cm_point(&s.distinct_rationals(2), &s.rationals(2))?;
        out.push(p.conjugate(&s.invertible(2))?);
        out.push(p);
    }
    Ok(out)
}

/// Runs every comparison. With `fault`, the computed constant term of `P^Z`
/// is shifted by 1.
pub fn n2_golden(fault: bool) -> Result<GoldenReport> {
    let mut entries = Vec::new();

    let mut cc = CentralCoeffs::compute(2)?;
    if fault {
        let shifted = cc.poly.coeff(0, 0).add(&HElement::one(2));
        let mut p = BiPoly::zero(&HElement::zero(2));
        for (&(a, b), c) in cc.poly.iter() {
            p.add_term(a, b, if (a, b) == (0, 0) { shifted.clone() } else { c.clone() });
        }
        cc.poly = p;
    }
    for &(dv, du, disp) in PZ {
        let computed = cc.poly.coeff(du, dv);
        entries.push(entry("P^Z", format!("v^{dv}u^{du}"), disp, |s| Ok(h2(s)? == computed))?);
    }

    let t_of = |s: &str| h2(s);
    for (name, disp) in Z_GENERATORS {
        entries.push(entry("Z2 generators", name.to_string(), disp, |s| Ok(t_of(s)?.is_central()))?);
    }

    // image of the central T on V_1, column τ = ι^{-1}(T ι(ε_τ))
    let t = h2(erratum("Z2 generators", "T").map_or("x1y1+x2y2+s12", |e| e.corrected))?;
    let perms = Perm::all(2);
    let t_cols: Vec<V1Element> =
        perms.iter().map(|p| Ok(iota_inv(&t.h_mul(&iota(&V1Element::basis(p)))?))).collect::<Result<_>>()?;
    for (r, row) in B_T.iter().enumerate() {
        for (c, disp) in row.iter().enumerate() {
            let got = t_cols[c].coeff(&perms[r]);
            let zl = VarSet::zl(2);
            let look = |n: &str| zl.index(n).map(|i| Poly::var(&zl, i));
            entries.push(entry("B2 generators", format!("T[{},{}]", r + 1, c + 1), disp, |s| {
                Ok(expr::eval(s, &Poly::one(&zl), look)? == got)
            })?);
        }
    }

    let bc = BetheCoeffs::compute(2)?;
    for &(b, r, c, disp) in PB {
        let got = pb_entry(&bc, b, r, c);
        entries.push(entry("P^B", format!("v^{b}[{},{}]", r + 1, c + 1), disp, |s| Ok(uzl(s)? == got))?);
    }

    let points = cm_points()?;
    let polys: Vec<BiPoly<Q>> = points.iter().map(cm_universal_poly).collect::<Result<_>>()?;
    for &(dv, du, disp) in PC {
        entries.push(entry("P^C", format!("v^{dv}u^{du}"), disp, |s| {
            for (p, pc) in points.iter().zip(&polys) {
                if cm_eval(s, &cm_values(p))? != pc.coeff(du, dv) {
                    return Ok(false);
                }
            }
            Ok(true)
        })?);
    }

    // the relation, evaluated with the printed generator list
    let printed: Vec<(&str, HElement)> = Z_GENERATORS.iter().map(|(n, s)| Ok((*n, h2(s)?))).collect::<Result<_>>()?;
    let rel_ok = |s: &str, binding: &[(&str, HElement)]| -> Result<bool> {
        let v = expr::eval(s, &HElement::one(2), |n| binding.iter().find(|(k, _)| *k == n).map(|(_, h)| h.clone()))?;
        Ok(v.is_empty())
    };
    let corrected_binding: Vec<(&str, HElement)> =
        printed.iter().map(|(n, h)| (*n, if *n == "T" { t.clone() } else { h.clone() })).collect();
    let verbatim = rel_ok(RELATION, &printed)?;
    let corrected = erratum("relation", "R").map(|e| rel_ok(e.corrected, &corrected_binding)).transpose()?;
    entries.push(EntryResult { object: "relation", slot: "R".into(), display: RELATION, verbatim, corrected });

    // the D^B display against the operator determinant
    let mut s = Sampler::new(5);
    let mut db_ok = true;
    for _ in 0..3 {
        let (z0, l0) = (s.distinct_rationals(2), s.rationals(2));
        db_ok &= rdet_oracle(&z0, &l0)? == n2_display(&z0, &l0)?;
    }
    entries.push(EntryResult { object: "D^B", slot: "operator".into(), display: "d^2-(l1+l2+e11+e22)d+(l1+e11)(l2+e22)-e21e12-e22'", verbatim: db_ok, corrected: None });

    Ok(GoldenReport { entries, certificates: certificates()? })
}

/// Independent checks behind the corrections.
fn certificates() -> Result<Vec<(&'static str, bool)>> {
    let mut out = Vec::new();

    // P^B through the center: ι P^B = P^Z ι on all ε_τ and low monomials
    let vars = VarSet::zl(2);
    let mut samples: Vec<V1Element> = Perm::all(2).iter().map(V1Element::basis).collect();
    for p in Perm::all(2) {
        for i in 0..4 {
            samples.push(V1Element::single(&p, Poly::var(&vars, i).mul(&Poly::var(&vars, (i + 1) % 4)))?);
        }
    }
    out.push(("P^B agrees with P^Z through iota (Z=B, N=2)", verify_zb(2, &samples)?.is_none()));

    // P^B through the operator determinant
    let mut s = Sampler::new(11);
    let mut ok = true;
    for _ in 0..3 {
        let (z0, l0) = (s.distinct_rationals(2), s.rationals(2));
        ok &= crate::bethe::oracle::oracle_mismatch(&z0, &l0)?.is_none();
    }
    out.push(("P^B agrees with the operator determinant", ok));

    let corrected_t = h2("x1y1+x2y2+s12")?;
    out.push(("corrected T is central and printed T is not", corrected_t.is_central() && !h2("x1y1+x2y2-s12")?.is_central()));

    // the relation is the unique one of weighted degree <= 4
    let rels = n2_relations(4)?;
    let rv = crate::cherednik::central::relation_vars();
    let expect = expr::eval("g1^2h2-g1g2T+g2^2h1-4h1h2+T^2-1", &Poly::one(&rv), |n| rv.index(n).map(|i| Poly::var(&rv, i)))?;
    out.push(("relation space in weighted degree <= 4 is spanned by the corrected relation", rels.len() == 1 && rels[0] == expect));

    // corrected P^C reproduces Ψ^C computed by the trace-log series
    let mut ok = true;
    let corrected: Vec<(u32, u32, &str)> =
        PC.iter().map(|&(dv, du, d)| (dv, du, erratum("P^C", &format!("v^{dv}u^{du}")).map_or(d, |e| e.corrected))).collect();
    for p in cm_points()? {
        let vals = cm_values(&p);
        let mut poly = BiPoly::zero(&rational::zero());
        for &(dv, du, d) in &corrected {
            poly.add_term(du, dv, cm_eval(d, &vals)?);
        }
        let series = expand_rational(&poly, &charpoly(p.z())?, &charpoly(p.l())?, 6, &rational::zero())?;
        ok &= series == cm_psi(&p, 6)?;
    }
    out.push(("corrected P^C reproduces the trace-log expansion of Psi^C", ok));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_is_accounted() {
        let r = n2_golden(false).unwrap();
        assert!(r.accounted(), "{:?}", r.first_problem());
        assert_eq!(r.mismatches().len(), ERRATA.len());
        assert!(r.entries.iter().filter(|e| e.object == "P^Z").all(|e| e.verbatim));
    }

    #[test]
    fn fault_is_detected() {
        let r = n2_golden(true).unwrap();
        assert!(!r.accounted());
    }
}
