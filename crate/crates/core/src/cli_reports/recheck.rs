use std::collections::BTreeMap;

use rayon::prelude::*;

use super::report::{Check, Report};
use super::scenario::Scenario;
use super::serial::{matrix_from_json, point_from_json, PointJson, SectionJson};
use crate::descent_maps::{elliptic_base, five_descent, theta_equal, theta_map, DescentImage, DescentSetting};
use crate::elliptic_ff::{lattice_identify, shioda_pairing, BiellipticPair, GramMatrix, LatticeType, Section};
use crate::error::{Error, Result};
use crate::exact_algebra::rationals::q;
use crate::exact_algebra::Gf;

fn cert<T: serde::de::DeserializeOwned>(r: &Report, key: &str) -> Result<T> {
    let v = r.certificates.get(key).ok_or_else(|| Error::Malformed(format!("report has no certificate {key}")))?;
    serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(format!("certificate {key}: {e}")))
}

fn sections(r: &Report, k: &Gf) -> Result<Vec<Section>> {
    let s: Vec<SectionJson> = cert(r, "sections")?;
    s.iter().map(|x| x.decode(k)).collect()
}

#[derive(serde::Deserialize)]
struct ThetaCert {
    class: usize,
    l: usize,
}

/// Recomputes each verdict from the embedded certificates and the library, without any search.
pub fn recheck(r: &Report) -> Result<Vec<Check>> {
    let sc: Scenario = serde_json::from_value(r.scenario.clone()).map_err(|e| Error::Malformed(format!("scenario echo: {e}")))?;
    match r.command.as_str() {
        "verify-d5" => recheck_d5(r, &sc),
        "verify-d6" => recheck_d6(r, &sc),
        "jacobian" => recheck_jacobian(r, &sc),
        c => Err(Error::InvalidInput(format!("nothing to recheck for {c}"))),
    }
}

fn recheck_sections(surf: &crate::elliptic_ff::SectionSurface, secs: &[Section]) -> Check {
    let valid = secs.iter().all(|s| surf.is_section(s));
    let distinct = secs.windows(2).all(|w| w[0] < w[1]);
    Check::new("sections", valid && distinct && secs.len() == 240, "240 distinct sections", format!("{} (valid {valid}, distinct {distinct})", secs.len()))
}

fn recheck_d5(r: &Report, sc: &Scenario) -> Result<Vec<Check>> {
    let surf = sc.surface()?;
    let k = surf.field.clone();
    let secs = sections(r, &k)?;
    let mut out = vec![recheck_sections(&surf, &secs)];
    let s = DescentSetting::new(&k, 5, surf.g.clone())?;

    let thetas: Vec<ThetaCert> = cert(r, "theta")?;
    let imgs = secs
        .par_iter()
        .map(|x| match theta_map(&s, &s.section_divisor(x)?)?.image {
            DescentImage::Theta { divisor, l } => Ok((divisor, l)),
            _ => Err(Error::InternalConsistency("theta image".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    // same partition: equal labels iff equal classes, checked against one representative per label
    let mut rep_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut ok = thetas.len() == imgs.len();
    for (i, t) in thetas.iter().enumerate().take(imgs.len()) {
        ok &= t.l == imgs[i].1;
        let j = *rep_of.entry(t.class).or_insert(i);
        ok &= theta_equal(&s.x_curve, (&imgs[i].0, imgs[i].1), (&imgs[j].0, imgs[j].1))?;
    }
    let reps: Vec<usize> = rep_of.values().copied().collect();
    for (a, &i) in reps.iter().enumerate() {
        for &j in &reps[a + 1..] {
            ok &= !theta_equal(&s.x_curve, (&imgs[i].0, imgs[i].1), (&imgs[j].0, imgs[j].1))?;
        }
    }
    out.push(Check::new("theta-classes", ok && reps.len() == 120, "120 classes as labelled", format!("{} labels, consistent {ok}", reps.len())));

    let pts: Vec<PointJson> = cert(r, "five_descent")?;
    let e_curve = elliptic_base(&s)?;
    let same = secs
        .par_iter()
        .zip(&pts)
        .map(|(x, p)| {
            let want = point_from_json(&k, p)?;
            Ok(matches!(five_descent(&s, &e_curve, &s.section_divisor(x)?)?.image, DescentImage::Torsion(t) if t == want))
        })
        .collect::<Result<Vec<_>>>()?;
    out.push(Check::new("five-descent-images", same.len() == secs.len() && same.iter().all(|&b| b), "all match", same.iter().filter(|&&b| b).count()));

    let gram = matrix_from_json(&cert::<Vec<Vec<String>>>(r, "gram")?)?;
    let fib = surf.singular_fibers()?;
    let n = secs.len();
    let rows_ok = gram.len() == n
        && (0..n)
            .into_par_iter()
            .map(|i| Ok(gram[i].len() == n && (0..n).all(|j| shioda_pairing(&k, &secs[i], &secs[j], &fib).map(|v| v == gram[i][j]).unwrap_or(false))))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
    let rep = lattice_identify(&GramMatrix::new(gram)?, sc.budget)?;
    out.push(Check::new(
        "gram-and-lattice",
        rows_ok && rep.kind == LatticeType::E8 && rep.norm2_count == 240,
        "pairings reproduce, E8",
        format!("pairings {rows_ok}, {:?}", rep.kind),
    ));
    Ok(out)
}

fn recheck_d6(r: &Report, sc: &Scenario) -> Result<Vec<Check>> {
    let surf = sc.surface()?;
    let k = surf.field.clone();
    let secs = sections(r, &k)?;
    let mut out = vec![recheck_sections(&surf, &secs)];
    let pair = BiellipticPair::new(&k, surf.g.clone())?;
    let pts = secs.iter().filter(|x| x.t.degree().unwrap_or(0) > 0).map(|x| pair.push_section(x)).collect::<Result<Vec<_>>>()?;
    let gram = matrix_from_json(&cert::<Vec<Vec<String>>>(r, "gram")?)?;
    let n = pts.len();
    let rows_ok = gram.len() == n
        && (0..n)
            .into_par_iter()
            .map(|i| Ok(gram[i].len() == n && (0..n).all(|j| pair.pairing(&pts[i], &pts[j]).map(|v| v == gram[i][j]).unwrap_or(false))))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
    let rep = lattice_identify(&GramMatrix::new(gram)?, sc.budget)?;
    out.push(Check::new(
        "gram-and-lattice",
        rows_ok && rep.kind == LatticeType::E6Dual && rep.determinant == q(1, 3),
        "pairings reproduce, E6*",
        format!("pairings {rows_ok}, {:?}", rep.kind),
    ));
    let w: Vec<SectionJson> = cert(r, "remdescent_witness")?;
    let (d, dp) = (w[0].decode(&k)?, w[1].decode(&k)?);
    let (p, pp) = (pair.push_section(&d)?, pair.push_section(&dp)?);
    let (_, t2) = pair.torsion_image();
    let torsion = pair.add(&p, &(crate::elliptic_ff::EcPoint::Infinity, t2)) == pp;
    let s = DescentSetting::new(&k, 6, surf.g.clone())?;
    let f = |x: &Section| -> Result<crate::curves_places::Divisor> {
        let a = s.section_divisor(x)?.a;
        let c = crate::curves_places::principal_divisor(&s.x_curve, &crate::descent_maps::kt_poly_function(&s.x_curve, &a)?)?;
        c.div_exact(2).ok_or_else(|| Error::InternalConsistency("div(a_D) is not even".into()))
    };
    let diff = f(&d)?.sub(&f(&dp)?);
    let differ = crate::curves_places::is_principal(&s.x_curve, &diff)?.is_none();
    out.push(Check::new("remdescent-witness", torsion && differ, "D' = D + tau, images differ", format!("translate {torsion}, differ {differ}")));
    Ok(out)
}

fn recheck_jacobian(r: &Report, sc: &Scenario) -> Result<Vec<Check>> {
    let Some(table) = r.certificates.get("addition_table") else { return Ok(vec![]) };
    let table: Vec<Vec<usize>> = serde_json::from_value(table.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
    let k = sc.field()?;
    let c = crate::mumford_jacobian::HyperellipticCurve::new(k.clone(), sc.f_poly()?)?;
    let els: Vec<super::scenario::DivisorText> = cert(r, "elements")?;
    let els = els
        .iter()
        .map(|d| c.validate(super::poly_text::parse_poly(&d.a, "x", &k)?, super::poly_text::parse_poly(&d.b, "x", &k)?))
        .collect::<Result<Vec<_>>>()?;
    let n = els.len();
    let mut ok = table.len() == n;
    for i in 0..n.min(table.len()) {
        for j in 0..n {
            ok &= table[i].get(j).is_some_and(|&t| t < n && c.cantor_add(&els[i], &els[j]).map(|s| s == els[t]).unwrap_or(false));
        }
    }
    Ok(vec![Check::new("addition-table", ok, "Cantor reproduces every entry", ok)])
}
