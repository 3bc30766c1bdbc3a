//! The n = 5 candidate pipeline: refine the published roots, certify an
//! exact common zero of the constraint system in the refined box, rebuild
//! the candidate matrix with certified complete pivoting, and tie its
//! growth to the unique real root of the degree-61 polynomial in (4, 5).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::data::{self, DataError};
use crate::multipoly::{
    certify_reconstruction, krawczyk_test, verify_system_links, CertifiedReconstruction,
    MultiPoly, MultiPolyError,
};
use crate::numerics::{Interval, IvCtx, Rational, Verdict};
use crate::unipoly::{isolate_real_roots, refine_root, UniPoly, UniPolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CandidateError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    UniPoly(#[from] UniPolyError),
    #[error(transparent)]
    MultiPoly(#[from] MultiPolyError),
    #[error("check failed: {0}")]
    Check(String),
}

/// Seed windows around the published approximate coordinates; each window
/// contains exactly one real root of the corresponding polynomial.
pub const SEED_X: (&str, &str) = ("-0.618533", "-0.616533");
pub const SEED_Y: (&str, &str) = ("-0.780151", "-0.778151");
pub const SEED_Z: (&str, &str) = ("0.452225", "0.454225");

fn window(poly: &UniPoly, lo: &str, hi: &str, digits: u32) -> Result<(Rational, Rational), CandidateError> {
    let lo = crate::numerics::parse_decimal_or_rational(lo).unwrap();
    let hi = crate::numerics::parse_decimal_or_rational(hi).unwrap();
    let isolated = isolate_real_roots(poly, &lo, &hi)?;
    if isolated.len() != 1 {
        return Err(CandidateError::Check(format!(
            "expected exactly one root in the seed window, found {}",
            isolated.len()
        )));
    }
    Ok(refine_root(poly, &isolated[0], digits)?)
}

/// Everything the point certification establishes.
#[derive(Debug, Clone)]
pub struct CandidateCertificate {
    /// Per-polynomial refined root enclosures.
    pub x_enclosure: (Rational, Rational),
    pub y_enclosure: (Rational, Rational),
    pub z_enclosure: (Rational, Rational),
    /// Krawczyk-contracted enclosure of the exact common zero of
    /// (p1, p2, zpoly).
    pub point: BTreeMap<String, Interval>,
    /// Interval residuals of p1, p2 at the certified point and of p3 at the
    /// certified point paired with the growth value.
    pub residuals: [Interval; 3],
    /// Certified reconstruction at the common-zero enclosure.
    pub recon: CertifiedReconstruction,
    /// Enclosure of the last-pivot growth.
    pub growth: Interval,
    /// The degree-61 polynomial changes sign across the growth enclosure,
    /// so its unique root in (4, 5) lies inside.
    pub growth_contains_g5_root: bool,
}

fn to_multipoly(p: &UniPoly, vars: &[String], var: &str) -> MultiPoly {
    let idx = vars.iter().position(|v| v == var).expect("variable not present");
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(e, c)| {
            let mut exp = vec![0u32; vars.len()];
            exp[idx] = e as u32;
            (exp, Rational::from(c.clone()))
        })
        .collect();
    MultiPoly::new(vars.to_vec(), terms)
}

/// Refine the published roots to `digits` decimal digits and certify the
/// candidate point and matrix. `ctx` should carry enough precision for the
/// requested digits (roughly 4 bits per digit plus headroom).
pub fn certify_candidate(digits: u32, ctx: &IvCtx) -> Result<CandidateCertificate, CandidateError> {
    let xpoly = data::xroot_poly()?;
    let ypoly = data::yroot_poly()?;
    let zpoly = data::zroot_poly()?;
    let p1 = data::p1_sys()?;
    let p2 = data::p2_sys()?;
    let p3 = data::p3_sys()?;
    let tower = data::tower()?;
    verify_system_links(&tower, &p1, &p2, &p3)?;

    let x_enclosure = window(&xpoly, SEED_X.0, SEED_X.1, digits)?;
    let y_enclosure = window(&ypoly, SEED_Y.0, SEED_Y.1, digits)?;
    let z_enclosure = window(&zpoly, SEED_Z.0, SEED_Z.1, digits)?;

    // existence certificate for the exact common zero of (p1, p2, zpoly)
    let vars = tower.vars.clone();
    let system = [
        p1.reorder_vars(&vars),
        p2.reorder_vars(&vars),
        to_multipoly(&zpoly, &vars, &vars[2]),
    ];
    let mut bounds = BTreeMap::new();
    bounds.insert(vars[0].clone(), ctx.from_rational_bounds(&x_enclosure.0, &x_enclosure.1));
    bounds.insert(vars[1].clone(), ctx.from_rational_bounds(&y_enclosure.0, &y_enclosure.1));
    bounds.insert(vars[2].clone(), ctx.from_rational_bounds(&z_enclosure.0, &z_enclosure.1));
    let outcome = krawczyk_test(&system, &bounds, ctx)?;
    if !outcome.contracted {
        return Err(CandidateError::Check(
            "Krawczyk operator did not contract: no existence certificate".into(),
        ));
    }
    let point = outcome.enclosure.expect("contracted implies an enclosure");

    let recon = certify_reconstruction(
        &tower,
        &point[&vars[0]],
        &point[&vars[1]],
        &point[&vars[2]],
        ctx,
        true,
    )?;
    let growth = recon.growth.clone();

    // residuals at the certified point (p3 needs the growth coordinate too)
    let r1 = p1.reorder_vars(&vars).eval_interval(&point, ctx);
    let r2 = p2.reorder_vars(&vars).eval_interval(&point, ctx);
    let mut vars4 = vars.clone();
    vars4.push("g".to_string());
    let mut point4 = point.clone();
    point4.insert("g".to_string(), growth.clone());
    let r3 = p3.reorder_vars(&vars4).eval_interval(&point4, ctx);

    // the degree-61 polynomial must change sign across the growth enclosure
    let p5 = data::p5()?;
    let s_lo = p5.sign_at(&growth.lo().to_rational());
    let s_hi = p5.sign_at(&growth.hi().to_rational());
    let growth_contains_g5_root = s_lo * s_hi < 0;

    Ok(CandidateCertificate {
        x_enclosure,
        y_enclosure,
        z_enclosure,
        point,
        residuals: [r1, r2, r3],
        recon,
        growth,
        growth_contains_g5_root,
    })
}

/// One named check of the verification suite.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, r: Result<String, String>) -> CheckResult {
    match r {
        Ok(detail) => CheckResult { name, passed: true, detail },
        Err(detail) => CheckResult { name, passed: false, detail },
    }
}

/// Options for the degree-61 verification suite.
#[derive(Debug, Clone)]
pub struct VerifyP5Options {
    /// Decimal digits of the root to pin and print.
    pub digits: u32,
    /// Run the (slow) exact discriminant factorization identity.
    pub with_discriminant: bool,
    /// Digits for the candidate-point certification.
    pub point_digits: u32,
}

impl Default for VerifyP5Options {
    fn default() -> Self {
        VerifyP5Options { digits: 60, with_discriminant: false, point_digits: 45 }
    }
}

/// The full degree-61 suite: bundled-data hashes, root isolation and
/// refinement against the reference digits, the Descartes/Mobius sign
/// arguments, the candidate-point certification, and optionally the exact
/// discriminant identity.
pub fn verify_p5_suite(opts: &VerifyP5Options) -> Vec<CheckResult> {
    let mut out = Vec::new();

    out.push(check("bundled-data-hashes", (|| {
        let files = data::verify_all().map_err(|e| e.to_string())?;
        Ok(format!("{} files verified", files.len()))
    })()));

    let p5 = match data::p5() {
        Ok(p) => p,
        Err(e) => {
            out.push(CheckResult { name: "load-p5", passed: false, detail: e.to_string() });
            return out;
        }
    };

    let q = |s: &str| crate::numerics::parse_decimal_or_rational(s).unwrap();

    let iso45 = isolate_real_roots(&p5, &q("4"), &q("5"));
    out.push(check("one-root-in-(4,5)", match &iso45 {
        Ok(list) if list.len() == 1 => Ok("exactly one isolating interval".into()),
        Ok(list) => Err(format!("{} isolating intervals", list.len())),
        Err(e) => Err(e.to_string()),
    }));

    out.push(check("no-roots-in-(-5,0)", match isolate_real_roots(&p5, &q("-5"), &q("0")) {
        Ok(list) if list.is_empty() => Ok("no isolating intervals".into()),
        Ok(list) => Err(format!("{} unexpected intervals", list.len())),
        Err(e) => Err(e.to_string()),
    }));

    if let Ok(list) = &iso45 {
        if list.len() == 1 {
            out.push(check("root-digits", (|| {
                let digits = opts.digits.min(200);
                let s = crate::unipoly::refine_to_digit_string(&p5, &list[0], digits)
                    .map_err(|e| e.to_string())?;
                let reference = data::g5_root_digits().map_err(|e| e.to_string())?;
                let want = &reference[..(digits as usize + 2).min(reference.len())];
                if s == want {
                    Ok(s)
                } else {
                    Err(format!("computed {s}, reference {want}"))
                }
            })()));
        }
    }

    out.push(check("descartes-(4,5)-map", (|| {
        let t = p5
            .mobius_substitute(&BigInt::from(5), &BigInt::from(4), &BigInt::from(1), &BigInt::from(1))
            .map_err(|e| e.to_string())?;
        let changes = t.descartes_sign_changes();
        if changes != 1 {
            return Err(format!("{changes} sign changes, expected 1"));
        }
        // signs: negative through t^8, positive from t^9 on (the published
        // prose says t^9/t^10; the computed boundary is one lower)
        let coeffs = t.coeffs();
        let neg_prefix = coeffs.iter().take_while(|c| num_traits::Signed::is_negative(*c)).count();
        if neg_prefix != 9 {
            return Err(format!("negative prefix of length {neg_prefix}, expected 9"));
        }
        if !coeffs[9..].iter().all(num_traits::Signed::is_positive) {
            return Err("tail is not all positive".into());
        }
        Ok("one sign change; negatives through t^8, positives from t^9".into())
    })()));

    out.push(check("all-negative-(-5,0)-map", (|| {
        let t = p5
            .mobius_substitute(&BigInt::from(0), &BigInt::from(-5), &BigInt::from(1), &BigInt::from(1))
            .map_err(|e| e.to_string())?;
        if t.coeffs().iter().all(num_traits::Signed::is_negative) {
            Ok("all coefficients negative".into())
        } else {
            Err("a nonnegative coefficient appeared".into())
        }
    })()));

    out.push(check("candidate-point", (|| {
        let prec = (opts.point_digits * 4 + 64).max(120);
        let ctx = IvCtx::new(prec);
        let cert = certify_candidate(opts.point_digits, &ctx).map_err(|e| e.to_string())?;
        if cert.recon.cp != Verdict::CertainlyYes {
            return Err(format!("reconstruction CP verdict {}", cert.recon.cp));
        }
        if !cert.growth_contains_g5_root {
            return Err("growth enclosure does not bracket the degree-61 root".into());
        }
        let wide = cert.residuals.iter().any(|r| {
            !r.contains_rational(&Rational::from_integer(0.into()))
        });
        if wide {
            return Err("a constraint residual excludes zero".into());
        }
        Ok(format!(
            "Krawczyk certified; growth in {}",
            cert.growth.to_text()
        ))
    })()));

    if opts.with_discriminant {
        out.push(check("discriminant-identity", (|| {
            verify_discriminant_identity().map_err(|e| e.to_string())?;
            Ok("Disc_z factorization reproduced exactly".into())
        })()));
    }

    out
}

/// The exact discriminant identity: Disc_z of the bundled degree-10 factor
/// equals -2^68 (g-6) (g-4)^32 (g-2)^6 (g^2-12g+40) P5(g), checked by exact
/// division with zero remainder and an exact constant at the end.
pub fn verify_discriminant_identity() -> Result<(), CandidateError> {
    let bf = data::gz_factor()?;
    let p5 = data::p5()?;
    let disc = bf.discriminant_main()?;
    let mut q = disc;
    let err = |what: &str| CandidateError::Check(format!("discriminant not divisible by {what}"));
    q = q.divide_exact(&UniPoly::linear(-6, 1)).map_err(|_| err("(g - 6)"))?;
    for _ in 0..32 {
        q = q.divide_exact(&UniPoly::linear(-4, 1)).map_err(|_| err("(g - 4)^32"))?;
    }
    for _ in 0..6 {
        q = q.divide_exact(&UniPoly::linear(-2, 1)).map_err(|_| err("(g - 2)^6"))?;
    }
    q = q.divide_exact(&UniPoly::from_i64(&[40, -12, 1])).map_err(|_| err("(g^2 - 12g + 40)"))?;
    q = q.divide_exact(&p5).map_err(|_| err("P5"))?;
    let expect = UniPoly::constant(-(BigInt::from(1) << 68u32));
    if q != expect {
        return Err(CandidateError::Check(format!(
            "leftover constant is {:?}, expected -2^68",
            q.coeffs()
        )));
    }
    Ok(())
}

/// The n = 7 suite: isolate the degree-6 polynomial's only root with
/// magnitude in (3, 16) and check its digits against the reference.
pub fn verify_p7_suite(digits: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let q = |s: &str| crate::numerics::parse_decimal_or_rational(s).unwrap();
    out.push(check("p7-root", (|| {
        let p7 = data::p7().map_err(|e| e.to_string())?;
        let pos = isolate_real_roots(&p7, &q("3"), &q("16")).map_err(|e| e.to_string())?;
        if pos.len() != 1 {
            return Err(format!("{} roots in (3,16), expected 1", pos.len()));
        }
        let neg = isolate_real_roots(&p7, &q("-16"), &q("-3")).map_err(|e| e.to_string())?;
        if !neg.is_empty() {
            return Err(format!("{} roots in (-16,-3), expected 0", neg.len()));
        }
        let digits = digits.min(78);
        let s = crate::unipoly::refine_to_digit_string(&p7, &pos[0], digits)
            .map_err(|e| e.to_string())?;
        let reference = data::g7_root_digits().map_err(|e| e.to_string())?;
        let want = &reference[..(digits as usize + 2).min(reference.len())];
        if s == want {
            Ok(s)
        } else {
            Err(format!("computed {s}, reference {want}"))
        }
    })()));
    out
}

/// The case-analysis octic: exactly one root in (-1, 1), near -0.17852,
/// and the monotone map g = 2(4+3z)/(2+z) stays provably below 4.1325
/// there.
pub fn verify_octic_case() -> Result<(Rational, Rational, Interval), CandidateError> {
    let oc = data::octic()?;
    let q = |s: &str| crate::numerics::parse_decimal_or_rational(s).unwrap();
    let roots = isolate_real_roots(&oc, &q("-1"), &q("1"))?;
    if roots.len() != 1 {
        return Err(CandidateError::Check(format!(
            "{} octic roots in (-1,1), expected 1",
            roots.len()
        )));
    }
    let enc = refine_root(&oc, &roots[0], 20)?;
    let reference = data::octic_root_digits()?;
    let s = crate::unipoly::refine_to_digit_string(&oc, &roots[0], 17)?;
    if !reference.starts_with(&s) {
        return Err(CandidateError::Check(format!("octic digits {s} disagree with {reference}")));
    }
    // g = 2 (4 + 3 z) / (2 + z) over the enclosure
    let ctx = IvCtx::new(96);
    let ziv = ctx.from_rational_bounds(&enc.0, &enc.1);
    let num = ctx.add(&Interval::from_i64(8), &ctx.mul(&Interval::from_i64(6), &ziv));
    let den = ctx.add(&Interval::from_i64(2), &ziv);
    let g = ctx.div(&num, &den).map_err(|e| CandidateError::Check(e.to_string()))?;
    if !(g.hi().to_rational() < q("4.1325")) {
        return Err(CandidateError::Check(format!(
            "monotone map value {} is not provably below 4.1325",
            g.to_text()
        )));
    }
    Ok((enc.0, enc.1, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octic_case_certifies() {
        let (lo, hi, g) = verify_octic_case().unwrap();
        assert!(lo <= hi);
        let q = |s: &str| crate::numerics::parse_decimal_or_rational(s).unwrap();
        assert!(lo > q("-0.1786") && hi < q("-0.1785"));
        assert!(g.hi().to_rational() < q("4.1325"));
        assert!(g.lo().to_rational() > q("3.8"));
    }

    #[test]
    fn p7_digits_check() {
        let results = verify_p7_suite(40);
        assert!(results.iter().all(|c| c.passed), "{results:?}");
    }
}
