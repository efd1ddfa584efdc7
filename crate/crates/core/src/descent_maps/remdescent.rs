use std::collections::BTreeMap;

use serde::Serialize;

use super::maps::{kt_poly_function, Certificate, DescentSetting};
use crate::curves_places::{is_principal, riemann_roch_dim, CurveFn, Divisor};
use crate::elliptic_ff::{BiellipticPair, KtPoint, Section};
use crate::error::{Error, Result};
use crate::exact_algebra::rationals::{q, Q};
use crate::exact_algebra::{Gf, PolyRing, Ring};

/// Theta = (1/2) div(h) + (sum of the places at infinity) on x^6 + g(t) = 0.
#[derive(Clone, Debug)]
pub struct EvenTheta {
    pub divisor: Divisor,
    pub l: usize,
    pub certificate: Certificate,
}

fn even_theta(s: &DescentSetting, f: CurveFn) -> Result<EvenTheta> {
    let cert = Certificate::new(&s.x_curve, f)?;
    let half = cert.divisor.div_exact(2).ok_or_else(|| Error::InternalConsistency("div(a_D) is not even".into()))?;
    let mut inf = Divisor::new();
    for pl in s.x_curve.infinite_places() {
        inf.add_term(pl, 1);
    }
    let divisor = half.add(&inf);
    if !divisor.is_effective() {
        return Err(Error::InternalConsistency("shifted half-divisor is not effective".into()));
    }
    let l = riemann_roch_dim(&s.x_curve, &divisor)?;
    Ok(EvenTheta { divisor, l, certificate: cert })
}

fn theta_eq(s: &DescentSetting, a: &EvenTheta, b: &EvenTheta) -> Result<bool> {
    super::maps::theta_equal(&s.x_curve, (&a.divisor, a.l), (&b.divisor, b.l))
}

/// The pair exhibiting that (1/2) div(a_D) does not factor through J / 2J.
#[derive(Clone, Debug)]
pub struct RemdescentWitness {
    pub d: Section,
    pub d_prime: Section,
    /// push(D') - push(D) equals the image of the 3-torsion class, so D' - D is in 2J
    pub difference_is_torsion: bool,
    /// (1/2) div(a_D) - (1/2) div(a_D') is not principal
    pub images_differ: bool,
    pub theta: EvenTheta,
    pub theta_prime: EvenTheta,
}

#[derive(Clone, Debug, Serialize)]
pub struct RemdescentSummary {
    pub r_count: usize,
    pub r1_count: usize,
    pub r2_count: usize,
    /// sizes of the classes {+-D, +-D + tau, +-D + 2 tau} inside R_1
    pub r1_orbit_sizes: BTreeMap<usize, usize>,
    /// number of distinct (1/2) div(a_D) inside each such class
    pub images_per_orbit: BTreeMap<usize, usize>,
    pub image_count: usize,
    pub all_images_odd: bool,
    pub all_doublings_principal: bool,
    /// classes from the constant sections (alpha, +-x^3) that no element of R reaches
    pub excluded_count: usize,
    pub witness_found: bool,
}

#[derive(Clone, Debug)]
pub struct RemdescentReport {
    pub summary: RemdescentSummary,
    pub witness: Option<RemdescentWitness>,
    pub thetas: Vec<EvenTheta>,
}

fn find(points: &[(KtPoint, KtPoint)], p: &(KtPoint, KtPoint)) -> Option<usize> {
    points.iter().position(|x| x == p)
}

/// Negative test for the even-degree analogue of phi_2 on y^2 = x^6 + g(t).
pub fn remdescent_negative_test(k: &Gf, g: &crate::exact_algebra::factor::GfPoly, sections: &[Section]) -> Result<RemdescentReport> {
    let s = DescentSetting::new(k, 6, g.clone())?;
    let pair = BiellipticPair::new(k, g.clone())?;
    let r = PolyRing::new(k.clone());
    let (consts, rs): (Vec<&Section>, Vec<&Section>) = sections.iter().partition(|x| x.t.degree().unwrap_or(0) == 0);
    let pts: Vec<(KtPoint, KtPoint)> = rs.iter().map(|x| pair.push_section(x)).collect::<Result<_>>()?;
    let heights: Vec<Q> = pts.iter().map(|p| pair.heights(p).map(|h| h.hj)).collect::<Result<_>>()?;
    let thetas: Vec<EvenTheta> = rs
        .iter()
        .map(|x| {
            let d = s.section_divisor(x)?;
            even_theta(&s, kt_poly_function(&s.x_curve, &d.a)?)
        })
        .collect::<Result<_>>()?;
    let all_doublings_principal = thetas.iter().map(|t| t.certificate.recheck()).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
    let all_images_odd = thetas.iter().all(|t| t.l % 2 == 1);

    // distinct images
    let mut reps: Vec<usize> = vec![];
    let mut class_of = vec![0usize; thetas.len()];
    for i in 0..thetas.len() {
        let mut found = None;
        for (c, &j) in reps.iter().enumerate() {
            if theta_eq(&s, &thetas[i], &thetas[j])? {
                found = Some(c);
                break;
            }
        }
        class_of[i] = match found {
            Some(c) => c,
            None => {
                reps.push(i);
                reps.len() - 1
            }
        };
    }

    let mut excluded_count = 0;
    let mut seen_roots = vec![];
    for c in &consts {
        let alpha = r.coeff(&c.t, 0);
        if seen_roots.contains(&alpha) {
            continue;
        }
        seen_roots.push(alpha.clone());
        let f = s.x_curve.fn_u_poly(&r.sub(&r.x(), &r.constant(alpha)));
        let th = even_theta(&s, f)?;
        let mut hit = false;
        for &j in &reps {
            if theta_eq(&s, &th, &thetas[j])? {
                hit = true;
                break;
            }
        }
        if !hit {
            excluded_count += 1;
        }
    }

    // R_1 classes under +-1 and the 3-torsion translation
    let (_, tau) = pair.torsion_image();
    let tau_pt = (crate::elliptic_ff::EcPoint::Infinity, tau);
    let neg = |p: &(KtPoint, KtPoint)| (pair.e1.curve.neg(&p.0), pair.e2.curve.neg(&p.1));
    let r1: Vec<usize> = (0..pts.len()).filter(|&i| heights[i] == q(4, 3)).collect();
    let mut done = vec![false; pts.len()];
    let mut r1_orbit_sizes = BTreeMap::new();
    let mut images_per_orbit = BTreeMap::new();
    let mut witness = None;
    for &i in &r1 {
        if done[i] {
            continue;
        }
        let mut orbit = vec![];
        for base in [pts[i].clone(), neg(&pts[i])] {
            let mut p = base;
            for _ in 0..3 {
                if let Some(j) = find(&pts, &p) {
                    if !orbit.contains(&j) {
                        orbit.push(j);
                    }
                }
                p = pair.add(&p, &tau_pt);
            }
        }
        for &j in &orbit {
            done[j] = true;
        }
        let mut imgs: Vec<usize> = orbit.iter().map(|&j| class_of[j]).collect();
        imgs.sort();
        imgs.dedup();
        *r1_orbit_sizes.entry(orbit.len()).or_insert(0) += 1;
        *images_per_orbit.entry(imgs.len()).or_insert(0) += 1;
        if witness.is_none() {
            let shifted = pair.add(&pts[i], &tau_pt);
            if let Some(j) = find(&pts, &shifted) {
                if class_of[i] != class_of[j] {
                    // independent confirmation through Riemann-Roch
                    let diff = thetas[i].divisor.sub(&thetas[j].divisor);
                    let principal = is_principal(&s.x_curve, &diff)?.is_some();
                    witness = Some(RemdescentWitness {
                        d: rs[i].clone(),
                        d_prime: rs[j].clone(),
                        difference_is_torsion: pair.add(&pts[i], &tau_pt) == pts[j],
                        images_differ: !principal,
                        theta: thetas[i].clone(),
                        theta_prime: thetas[j].clone(),
                    });
                }
            }
        }
    }
    let summary = RemdescentSummary {
        r_count: rs.len(),
        r1_count: r1.len(),
        r2_count: heights.iter().filter(|h| **h == q(2, 1)).count(),
        r1_orbit_sizes,
        images_per_orbit,
        image_count: reps.len(),
        all_images_odd,
        all_doublings_principal,
        excluded_count,
        witness_found: witness.as_ref().is_some_and(|w| w.difference_is_torsion && w.images_differ),
    };
    Ok(RemdescentReport { summary, witness, thetas })
}
