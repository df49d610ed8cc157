//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use tririgid_cli::random::{random_datum, random_matrix, random_r3_surface, rng, DatumBounds};
use tririgid_cli::sweep::{
    check_abc_dominance, check_elimination_stability, check_rationality_dominance, check_torus,
    enumerate, CheckResult, SweepConfig,
};
use tririgid_core::classify::{classify_rationality, classify_rigidity, Subcase};
use tririgid_core::exactalg::{buchberger, rat, MonomialOrder, Polynomial, Var};
use tririgid_core::lndlab::{
    check_case_a_identity, check_case_gradings, check_witness, jacobian_pair, witness_jacobian,
    witness_s_variable, witness_suspension_lift, Derivation, NilpotencyVerdict, QuotientRing,
    DEFAULT_BOUND,
};
use tririgid_core::suspend::{build_suspension, suspension_split, SuspensionSpec};
use tririgid_core::trinomial::{relations, TrinomialDatum, VarietyType};

type Verdict = Result<String, String>;

/// Collects failures, keeping the first few messages.
#[derive(Default)]
struct Failures {
    count: usize,
    first: Vec<String>,
}

impl Failures {
    fn record(&mut self, what: impl FnOnce() -> String) {
        self.count += 1;
        if self.first.len() < 3 {
            self.first.push(what());
        }
    }

    fn check(&mut self, d: &TrinomialDatum, res: Option<CheckResult>) -> bool {
        match res {
            Some(Ok(())) => true,
            Some(Err(msg)) => {
                self.record(|| format!("{}: {msg}", d.canonical_key()));
                true
            }
            None => false,
        }
    }

    fn finish(self, summary: String) -> Verdict {
        if self.count == 0 {
            Ok(summary)
        } else {
            Err(format!(
                "{summary}; {} failures: {}",
                self.count,
                self.first.join(" | ")
            ))
        }
    }
}

fn surface(ls: &[u32]) -> TrinomialDatum {
    TrinomialDatum::type2_generic(0, ls.iter().map(|&l| vec![l]).collect())
}

/// Type 2 surfaces with `r` in {2, 3, 4} and exponents in [1, 6].
fn surface_sweep() -> Vec<TrinomialDatum> {
    enumerate(&SweepConfig {
        max_r: 4,
        max_l: 6,
        max_n: 1,
        max_m: 0,
        ..SweepConfig::default()
    })
    .expect("sweep within limits")
}

/// Non-rigid iff `k = l = 2`, over `2 <= k <= l <= m <= top`.
fn pham_grid(top: u32, f: &mut Failures) -> Result<usize, String> {
    let mut n = 0;
    for k in 2..=top {
        for l in k..=top {
            for m in l..=top {
                n += 1;
                let d = surface(&[k, l, m]);
                let rigid = classify_rigidity(&d).map_err(|e| e.to_string())?.rigid;
                if rigid == (k == 2 && l == 2) {
                    f.record(|| format!("({k},{l},{m}) rigid={rigid}"));
                }
            }
        }
    }
    Ok(n)
}

/// The range `[2, 6]` holds 35 surfaces; the 56-surface table is the
/// six-value range `[2, 7]`. Both are checked.
fn pham_brieskorn() -> Verdict {
    let mut f = Failures::default();
    let small = pham_grid(6, &mut f)?;
    let large = pham_grid(7, &mut f)?;
    if (small, large) != (35, 56) {
        return Err(format!(
            "enumerated {small} and {large} surfaces, expected 35 and 56"
        ));
    }
    f.finish(format!("{small} surfaces over [2,6], {large} over [2,7]"))
}

fn sweep_property(
    sweep: &[TrinomialDatum],
    check: impl Fn(&TrinomialDatum) -> Option<CheckResult>,
    what: &str,
) -> Verdict {
    let mut f = Failures::default();
    let mut applied = 0;
    for d in sweep {
        if f.check(d, check(d)) {
            applied += 1;
        }
    }
    if applied == 0 {
        return Err(format!("no {what} in the sweep"));
    }
    f.finish(format!("{applied} {what}"))
}

/// Runs all three verifications and the depth bound on one witness.
fn verify(der: &Derivation, ring: &QuotientRing, max_exp: u32, label: &str, f: &mut Failures) {
    match check_witness(der, ring, DEFAULT_BOUND) {
        Ok(c) => {
            let depth = c.nilpotency.max_depth();
            if !c.well_defined.well_defined
                || c.nilpotency.verdict != NilpotencyVerdict::Proven
                || !c.exp_preserves_ideal
                || depth > max_exp as usize + 1
            {
                f.record(|| format!("{label}: {c:?}"));
            }
        }
        Err(e) => f.record(|| format!("{label}: {e}")),
    }
}

fn max_exponent(d: &TrinomialDatum) -> u32 {
    d.exponents.iter().flatten().copied().max().unwrap_or(1)
}

fn witness_soundness() -> Verdict {
    let mut f = Failures::default();
    let (mut s_count, mut jac_count, mut lift_count) = (0, 0, 0);

    // d/dS_1 for m in {1, 2, 3}, both types
    for t in [VarietyType::Type1, VarietyType::Type2] {
        let base = enumerate(&SweepConfig {
            variety_type: t,
            max_r: 3,
            max_l: 3,
            max_n: 1,
            max_m: 0,
            ..SweepConfig::default()
        })
        .unwrap();
        for d0 in &base {
            for m in 1..=3 {
                let d = TrinomialDatum { m, ..d0.clone() };
                let der = witness_s_variable(&d).map_err(|e| e.to_string())?;
                let ring = QuotientRing::of_datum(&d).map_err(|e| e.to_string())?;
                verify(&der, &ring, max_exponent(&d), &d.canonical_key(), &mut f);
                s_count += 1;
            }
        }
    }

    // Jacobian witnesses on hypersurfaces with a linear variable,
    // exponents <= 4, tuples of length <= 2
    for t in [VarietyType::Type1, VarietyType::Type2] {
        let all = enumerate(&SweepConfig {
            variety_type: t,
            max_r: 2,
            max_l: 4,
            max_n: 2,
            max_m: 0,
            ..SweepConfig::default()
        })
        .unwrap();
        for d in &all {
            let Some((u, v)) = jacobian_pair(d) else {
                continue;
            };
            let der = witness_jacobian(d, u, v).map_err(|e| e.to_string())?;
            let g = &relations(d).unwrap().relations[0];
            if !der.apply(g).is_zero() {
                f.record(|| format!("{}: Jacobian does not annihilate g", d.canonical_key()));
            }
            let ring = QuotientRing::of_datum(d).map_err(|e| e.to_string())?;
            verify(&der, &ring, max_exponent(d), &d.canonical_key(), &mut f);
            jac_count += 1;

            // lift along a suspension whose f is the monomial of the tuple
            // the derivation does not touch
            if t == VarietyType::Type2 {
                let (iu, iv) = (d.tuple_of(u).unwrap().0, d.tuple_of(v).unwrap().0);
                let k = (0..3).find(|&k| k != iu && k != iv).unwrap();
                let y = Var::t(3, 1);
                let spec = SuspensionSpec::new(
                    vec![g.clone()],
                    Polynomial::term(rat(1), d.monomial(k)),
                    vec![3],
                    vec![y],
                )
                .map_err(|e| e.to_string())?;
                match witness_suspension_lift(&der, &spec) {
                    Ok(lifted) => {
                        let mut vars = d.variables();
                        vars.push(y);
                        let ring = QuotientRing::from_relations(vars, build_suspension(&spec))
                            .map_err(|e| e.to_string())?;
                        verify(
                            &lifted,
                            &ring,
                            max_exponent(d).max(3),
                            &d.canonical_key(),
                            &mut f,
                        );
                        lift_count += 1;
                    }
                    Err(e) => f.record(|| format!("{}: lift failed: {e}", d.canonical_key())),
                }
            }
        }
    }

    // d/dS_1 lifted along the Type 2 split
    let mut g = rng(4);
    for _ in 0..30 {
        let r = g.gen_range(2..=3);
        let exps = (0..=r).map(|_| vec![g.gen_range(1..=4)]).collect();
        let d = TrinomialDatum::type2(g.gen_range(1..=3), exps, random_matrix(&mut g, r + 1));
        let split = suspension_split(&d).map_err(|e| e.to_string())?;
        let spec = split.suspension_spec().map_err(|e| e.to_string())?;
        let base = witness_s_variable(&split.base).map_err(|e| e.to_string())?;
        match witness_suspension_lift(&base, &spec) {
            Ok(lifted) => {
                let ring = QuotientRing::of_datum(&d).map_err(|e| e.to_string())?;
                verify(&lifted, &ring, max_exponent(&d), &d.canonical_key(), &mut f);
                lift_count += 1;
            }
            Err(e) => f.record(|| format!("{}: lift failed: {e}", d.canonical_key())),
        }
    }
    f.finish(format!(
        "{s_count} S-variable, {jac_count} Jacobian, {lift_count} lifted witnesses"
    ))
}

fn relation_sanity() -> Verdict {
    let mut f = Failures::default();
    let mut g = rng(5);
    let bounds = DatumBounds {
        max_r: 4,
        max_n: 2,
        max_l: 3,
        max_m: 1,
    };
    let mut splits = 0;
    for _ in 0..100 {
        let d = random_datum(&mut g, bounds);
        let rels = relations(&d).map_err(|e| e.to_string())?.relations;
        let gb = buchberger(&rels, &MonomialOrder::grevlex()).map_err(|e| e.to_string())?;
        if !gb.contains_all(&rels) {
            f.record(|| format!("{}: relation not in its own basis", d.canonical_key()));
        }
        if d.variety_type == VarietyType::Type2 {
            let s = suspension_split(&d).map_err(|e| e.to_string())?;
            let target = &rels[d.r - 2];
            let lifted = &Polynomial::term(rat(1), d.monomial(d.r)) - &s.f;
            let ok = s.reconstructed
                && s.scale != rat(0)
                && *target == lifted.scale(&s.scale)
                && target.scalar_multiple_of(&lifted).is_some();
            if !ok {
                f.record(|| format!("{}: split does not recover g_(r-2)", d.canonical_key()));
            }
            splits += 1;
        }
    }
    f.finish(format!("100 data, {splits} splits"))
}

fn gamma_identity() -> Verdict {
    let mut f = Failures::default();
    let mut g = rng(6);
    for _ in 0..50 {
        let d = random_r3_surface(&mut g);
        match check_case_a_identity(&d) {
            Ok(rep) if rep.matches && rep.gamma1_nonzero && rep.holds() => {}
            Ok(rep) => f.record(|| format!("{}: {rep:?}", d.canonical_key())),
            Err(e) => f.record(|| format!("{}: {e}", d.canonical_key())),
        }
    }
    f.finish("50 random matrices".into())
}

fn gradings() -> Verdict {
    let mut f = Failures::default();
    let mut cases: Vec<(Subcase, Vec<u32>)> = (3..=15)
        .step_by(2)
        .map(|n| (Subcase::A, vec![2, 2, 2, n]))
        .collect();
    cases.push((Subcase::B, vec![2, 2, 4, 3]));
    cases.push((Subcase::C, vec![2, 2, 3, 5]));
    cases.push((Subcase::D, vec![2, 2, 2, 3, 5]));
    let mut g = rng(8);
    let mut n = 0;
    for (sub, ls) in &cases {
        let generic = surface(ls);
        let random = TrinomialDatum::type2(
            0,
            ls.iter().map(|&l| vec![l]).collect(),
            random_matrix(&mut g, ls.len()),
        );
        for d in [generic, random] {
            n += 1;
            match check_case_gradings(&d, *sub) {
                Ok(rep) if rep.holds() => {}
                Ok(rep) => f.record(|| format!("{} {:?}: {rep:?}", sub.label(), ls)),
                Err(e) => f.record(|| format!("{} {:?}: {e}", sub.label(), ls)),
            }
        }
    }
    f.finish(format!("{n} gradings (a: odd l3 in 3..=15, b, c, d)"))
}

fn symmetry() -> Verdict {
    let mut f = Failures::default();
    let mut g = rng(9);
    let bounds = DatumBounds {
        max_r: 4,
        max_n: 3,
        max_l: 6,
        max_m: 1,
    };
    for _ in 0..200 {
        let d = random_datum(&mut g, bounds);
        let k = g.gen_range(0..d.exponents.len());
        let mut within: Vec<usize> = (0..d.exponents[k].len()).collect();
        within.shuffle(&mut g);
        let mut perm: Vec<usize> = (0..d.exponents.len()).collect();
        perm.shuffle(&mut g);
        let e = d.permute_within(k + d.q(), &within).permute_tuples(&perm);
        let before = (
            classify_rigidity(&d).map_err(|e| e.to_string())?.rigid,
            classify_rationality(&d)
                .map_err(|e| e.to_string())?
                .rational,
        );
        let after = (
            classify_rigidity(&e).map_err(|e| e.to_string())?.rigid,
            classify_rationality(&e)
                .map_err(|e| e.to_string())?
                .rational,
        );
        if before != after {
            f.record(|| {
                format!(
                    "{} -> {}: {before:?} vs {after:?}",
                    d.canonical_key(),
                    e.canonical_key()
                )
            });
        }
    }
    f.finish("200 random data".into())
}

type Criterion<'a> = (&'a str, Option<u128>, Box<dyn Fn() -> Verdict + 'a>);

fn main() {
    let sweep = surface_sweep();
    // name, runtime limit in ms, check
    let criteria: Vec<Criterion> = vec![
        (
            "Pham-Brieskorn table",
            Some(1_000),
            Box::new(pham_brieskorn),
        ),
        (
            "rationality dominance",
            Some(30_000),
            Box::new(|| sweep_property(&sweep, check_rationality_dominance, "surfaces")),
        ),
        (
            "ABC dominance",
            None,
            Box::new(|| sweep_property(&sweep, check_abc_dominance, "surfaces with all l >= 2")),
        ),
        (
            "witness soundness",
            Some(60_000),
            Box::new(witness_soundness),
        ),
        ("relation and split sanity", None, Box::new(relation_sanity)),
        ("gamma1 squared identity", None, Box::new(gamma_identity)),
        (
            "torus semi-invariance",
            None,
            Box::new(|| sweep_property(&sweep, check_torus, "surfaces")),
        ),
        ("grading hypotheses", None, Box::new(gradings)),
        ("symmetry invariance", None, Box::new(symmetry)),
        (
            "elimination stability",
            None,
            Box::new(|| {
                sweep_property(
                    &sweep,
                    check_elimination_stability,
                    "surfaces with a linear monomial",
                )
            }),
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut verdict = run();
        let ms = start.elapsed().as_millis();
        if let (Ok(detail), Some(limit)) = (&verdict, limit) {
            if ms > *limit {
                verdict = Err(format!("{detail}; exceeded {limit} ms"));
            }
        }
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({ms} ms)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
