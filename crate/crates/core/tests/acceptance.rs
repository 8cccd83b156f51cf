//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use fermat_core::cli::{germ, germ_corpus, pair_corpus, parse_corpus, resultant_identity_checks, CorpusEntry, BUILTIN_CORPUS};
use fermat_core::curves::parse_poly;
use fermat_core::exact_arith::resultant::discriminant_order;
use fermat_core::exact_arith::weierstrass;
use fermat_core::fermat_selfint::{analyze, default_precision, intersection_locus, point_invariants, AnalyzeOptions, SelfIntersectionReport};
use fermat_core::local_invariants::{
    branch_invariants, intersection_multiplicity, intersection_multiplicity_puiseux, milnor_direct, milnor_number,
    v_general_order, Multiplicity, Precision,
};
use fermat_core::SeriesOrder;

type Outcome = Result<(), String>;
type Check = fn() -> Outcome;

const PREC: Precision = Precision { start: 2, cap: 512 };

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(d: usize, g: &str) -> Result<SelfIntersectionReport, String> {
    let poly = parse_poly(g).map_err(|e| e.to_string())?;
    analyze(&poly, d, &AnalyzeOptions::default()).map_err(|e| format!("d = {d}, g = {g}: {e}"))
}

fn corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUILTIN_CORPUS).expect("built-in corpus parses")
}

fn corpus_reports() -> Result<Vec<SelfIntersectionReport>, String> {
    corpus().iter().map(|en| run(en.d, &en.poly)).collect()
}

fn certified_c2(r: &SelfIntersectionReport) -> Result<(usize, i64), String> {
    r.k_candidates
        .iter()
        .find(|k| k.certified)
        .map(|k| (k.k, k.c2))
        .ok_or_else(|| format!("{}: no certified k", r.curve))
}

fn split_line() -> Outcome {
    for d in [5usize, 7] {
        let t = Instant::now();
        let r = run(d, "y + x")?;
        let elapsed = t.elapsed();
        let (k, c2) = certified_c2(&r)?;
        ensure(k == d, || format!("d = {d}: k = {k}"))?;
        ensure(c2 == 2 - d as i64, || format!("d = {d}: C^2 = {c2}"))?;
        ensure(r.classes.len() == 1 && r.classes[0].class_degree == 1, || format!("d = {d}: expected one rational point"))?;
        let mu = r.classes[0].mu_scheme;
        ensure(mu == (d - 1) * (d - 1), || format!("d = {d}: mu_P = {mu}"))?;
        ensure(elapsed < Duration::from_secs(1), || format!("d = {d}: took {elapsed:?}"))?;
    }
    Ok(())
}

fn nonsplit_line() -> Outcome {
    let r = run(5, "y - 2*x")?;
    let (k, c2) = certified_c2(&r)?;
    ensure(k == 1 && c2 == 5, || format!("k = {k}, C^2 = {c2}"))?;
    let degrees: Vec<usize> = r.classes.iter().map(|c| c.class_degree).collect();
    ensure(degrees == [5], || format!("class degrees {degrees:?}"))?;
    let sum: usize = r.classes.iter().map(|c| c.class_degree * c.i_p).sum();
    ensure(sum == 5, || format!("Bezout sum {sum}"))
}

fn formula_b() -> Outcome {
    let curves: Vec<CorpusEntry> = corpus().into_iter().filter(|en| en.d == 5).collect();
    let by_degree = |e: usize| curves.iter().filter(|en| parse_poly(&en.poly).map(|g| g.degree()) == Ok(e)).count();
    ensure(by_degree(1) >= 2 && by_degree(2) >= 2 && by_degree(3) >= 1, || "corpus lacks the required curves".into())?;
    let mut checked = 0;
    for en in &curves {
        let g = parse_poly(&en.poly).map_err(|e| e.to_string())?;
        let prec = default_precision(5, g.degree());
        for pc in intersection_locus(&g, 5).map_err(|e| e.to_string())? {
            let t = Instant::now();
            let c = point_invariants(&g, 5, &pc, prec).map_err(|e| format!("{}: {e}", en.poly))?;
            ensure(t.elapsed() < Duration::from_secs(60), || format!("{}: class took {:?}", en.poly, t.elapsed()))?;
            let expected = 4 * c.i_p + 5 * c.mu_e - 4;
            ensure(c.mu_scheme == expected, || format!("{}: mu(Phi) = {} but formula gives {expected}", en.poly, c.mu_scheme))?;
            checked += 1;
        }
    }
    // The cubic's node must lie on D.
    let cubic = curves.iter().find(|en| parse_poly(&en.poly).map(|g| g.degree()) == Ok(3)).unwrap();
    let r = run(5, &cubic.poly)?;
    ensure(r.classes.iter().any(|c| c.mu_e > 0), || "cubic singularity is not on D".into())?;
    ensure(checked > 0, || "no point classes".into())
}

fn bezout() -> Outcome {
    for r in corpus_reports()? {
        let sum: usize = r.classes.iter().map(|c| c.class_degree * c.i_p).sum();
        ensure(sum == r.d * r.e, || format!("{}: sum {sum}, de = {}", r.curve, r.d * r.e))?;
    }
    Ok(())
}

fn disc_milnor() -> Outcome {
    let germs = germ_corpus();
    let names: Vec<&str> = germs.iter().map(|g| g.0).collect();
    for want in ["node", "cusp", "tacnode", "triple point", "E6"] {
        ensure(names.iter().any(|n| n.contains(want)), || format!("missing germ {want}"))?;
    }
    ensure(germs.len() >= 10, || "fewer than 10 germs".into())?;
    for (name, f, mu) in germs {
        let direct = milnor_direct(&f, PREC).map_err(|e| format!("{name}: {e}"))?;
        ensure(direct == Multiplicity::Finite(mu), || format!("{name}: i0(f_u, f_v) = {direct:?}, expected {mu}"))?;
        let b = v_general_order(&f).map_err(|e| format!("{name}: {e}"))?;
        let o = (4..=256)
            .step_by(4)
            .find_map(|n| {
                let w = weierstrass(&f, n).ok()?;
                match discriminant_order(&w.w, n).ok()? {
                    SeriesOrder::Exact(o) => Some(o),
                    SeriesOrder::AtLeast(_) => None,
                }
            })
            .ok_or_else(|| format!("{name}: discriminant order not found"))?;
        ensure(o == mu + b - 1, || format!("{name}: o(Disc W) = {o}, mu + b - 1 = {}", mu + b - 1))?;
    }
    Ok(())
}

fn halphen() -> Outcome {
    let pairs = pair_corpus();
    ensure(pairs.len() >= 10, || "fewer than 10 pairs".into())?;
    for (name, f, g, i0) in pairs {
        let a = intersection_multiplicity(&f, &g, PREC).map_err(|e| format!("{name}: {e}"))?;
        let b = intersection_multiplicity_puiseux(&f, &g, PREC).map_err(|e| format!("{name}: {e}"))?;
        ensure(a == b && a == Multiplicity::Finite(i0), || format!("{name}: resultant {a:?}, series {b:?}, expected {i0}"))?;
    }
    Ok(())
}

fn resultant_identities() -> Outcome {
    for row in resultant_identity_checks(100, 20260101) {
        ensure(row.ok() && row.total == 100, || format!("{}: {:?}", row.name, row.failure))?;
    }
    Ok(())
}

fn branch_additivity() -> Outcome {
    let product = germ(&[(0, 2, 1), (3, 0, -1)]) * germ(&[(0, 1, 1), (1, 0, -1)]);
    let mut germs = germ_corpus();
    germs.push(("(v^2 - u^3)(v - u)", product, 5));
    for (name, f, mu) in germs {
        let inv = branch_invariants(&f, PREC).map_err(|e| format!("{name}: {e}"))?;
        let sum_branches: usize = inv.classes.iter().map(|c| c.count * c.milnor).sum();
        let recombined = sum_branches as i64 + inv.pairwise_sum as i64 - inv.branch_count as i64 + 1;
        ensure(recombined == mu as i64, || format!("{name}: branches give {recombined}, expected {mu}"))?;
        let disc = milnor_number(&f, PREC).map_err(|e| format!("{name}: {e}"))?;
        ensure(inv.milnor == disc, || format!("{name}: {} vs discriminant route {disc}", inv.milnor))?;
    }
    Ok(())
}

fn reducedness() -> Outcome {
    for r in corpus_reports()? {
        for c in &r.classes {
            ensure(c.checks.reduced, || format!("{}: class over {}", r.curve, c.field_minpoly))?;
        }
    }
    Ok(())
}

fn global_consistency() -> Outcome {
    let mut lines = 0;
    for r in corpus_reports()? {
        let de2 = (r.d * r.e * r.e) as i64;
        for k in r.k_candidates.iter().filter(|k| k.certified) {
            ensure(de2 == k.k as i64 * k.c2 + k.pairwise_sum, || format!("{}: k = {}", r.curve, k.k))?;
            if r.e == 1 {
                lines += 1;
            }
        }
    }
    ensure(lines >= 4, || format!("only {lines} certified line reports"))
}

fn genus_bound() -> Outcome {
    for r in corpus_reports()? {
        let sum: usize = r.classes.iter().map(|c| c.class_degree * c.mu_e).sum();
        let bound = (r.e - 1) * r.e.saturating_sub(2);
        ensure(sum <= bound, || format!("{}: sum mu = {sum} > {bound}", r.curve))?;
    }
    Ok(())
}

fn determinism() -> Outcome {
    let a = run(5, "x^2 - y*z")?.to_json();
    let b = run(5, "x^2 - y*z")?.to_json();
    ensure(a == b, || "JSON differs between runs".into())
}

fn main() {
    let criteria: [(&str, Check); 12] = [
        ("split line gives C^2 = 2 - d", split_line),
        ("non-split line gives C^2 = d", nonsplit_line),
        ("Milnor number of the local equation", formula_b),
        ("Bezout sum equals de", bezout),
        ("discriminant order versus Milnor number", disc_milnor),
        ("resultant and series intersection multiplicities", halphen),
        ("resultant identities", resultant_identities),
        ("branch additivity", branch_additivity),
        ("local equations are reduced", reducedness),
        ("de^2 = k C^2 + pairwise sum", global_consistency),
        ("genus bound", genus_bound),
        ("deterministic JSON", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2} {name}: pass", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
