//! Condensed text rendering of the same report objects the JSON mode emits.
//! Vertex and eigenvalue numbers are shown 1-based.

use spectral_certify::analysis::AnalysisReport;
use spectral_certify::campaign::CampaignSummary;
use spectral_certify::krylov::{BlockKrylovVerdict, GramCheck, WalkClaim, WalkMatrixReport};
use spectral_certify::minors::MinorIndex;
use std::fmt::Write as _;

const SHOWN_SUPPORTS: usize = 12;

fn one_based(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn support(idx: &MinorIndex) -> String {
    format!("rows {} cols {}", one_based(&idx.rows), one_based(&idx.cols))
}

fn claim(c: &WalkClaim) -> String {
    match c {
        WalkClaim::FullRank { holds } => format!("full rank ({})", if *holds { "holds" } else { "VIOLATED" }),
        WalkClaim::OnesOrthogonal { rank, expected } => format!("orthogonal to ones: rank {rank}, expected {expected}"),
        WalkClaim::OnesMultiple { rank } => format!("multiple of ones: rank {rank}"),
        WalkClaim::NotApplicable => "no claim".into(),
    }
}

pub fn walk_line(r: &WalkMatrixReport) -> String {
    let sparsity = match &r.spectral {
        Some(s) if s.undecided == 0 => s.nonzero.to_string(),
        Some(s) => format!("{}+{}?", s.nonzero, s.undecided),
        None => "-".into(),
    };
    format!(
        "rank {:>3}  spectral support {:>4}  deg Q {:>3}  {}  {}",
        r.rank,
        sparsity,
        r.annihilator.degree(),
        claim(&r.claim),
        if r.consistent() { "consistent" } else { "INCONSISTENT" }
    )
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input      {} ({:?}, n = {})", r.input.source, r.input.operator, r.input.n);
    let _ = writeln!(s, "charpoly   {}", r.charpoly);
    let factors: Vec<String> = r
        .factorization
        .iter()
        .map(|f| if f.multiplicity == 1 { format!("({})", f.poly) } else { format!("({})^{}", f.poly, f.multiplicity) })
        .collect();
    let _ = writeln!(s, "factors    {}", factors.join(" * "));
    for f in &r.galois.factors {
        let rows: Vec<String> = f
            .homogeneity
            .iter()
            .map(|h| match (&h.verdict, &h.error) {
                (Some(v), _) => format!("m={} {:?} {:?}", h.m, v, h.orbit_sizes),
                (None, Some(e)) => format!("m={} error: {e}", h.m),
                (None, None) => format!("m={} ?", h.m),
            })
            .collect();
        let _ = writeln!(s, "galois     degree {}: {:?}; {}", f.poly.degree(), f.certificate.status, rows.join("; "));
    }
    if let Some(m) = &r.minors {
        let _ = writeln!(s, "minors     size  minors  vanishing  undecided");
        for z in &m.scan.sizes {
            let how = if z.inferred { "  (complement)" } else { "" };
            let _ = writeln!(s, "           {:>4}  {:>6}  {:>9}  {:>9}{how}", z.m, z.minors, z.vanishing, z.undecided);
        }
        let vanishing: Vec<&MinorIndex> = m.scan.sizes.iter().flat_map(|z| &z.vanishing_supports).collect();
        for idx in vanishing.iter().take(SHOWN_SUPPORTS) {
            let _ = writeln!(s, "vanishing  {}", support(idx));
        }
        if vanishing.len() > SHOWN_SUPPORTS {
            let _ = writeln!(s, "vanishing  ... {} more (see --json)", vanishing.len() - SHOWN_SUPPORTS);
        }
        for w in &m.witnesses {
            let _ = writeln!(
                s,
                "witness    rows {} cols {}: support {} + {} <= {}",
                one_based(&w.rows),
                one_based(&w.cols),
                w.spectral_support_certified,
                w.vertex_support_certified,
                w.bound
            );
        }
    }
    for (k, w) in r.walk.iter().enumerate() {
        let _ = writeln!(s, "walk {k:<5} {}", walk_line(w));
    }
    for note in &r.notes {
        let _ = writeln!(s, "note       {note}");
    }
    let _ = writeln!(s, "complete   {}", if r.complete { "yes" } else { "no (undecided entries remain)" });
    let _ = writeln!(s, "digest     {}", r.digest());
    s
}

pub fn campaign(c: &CampaignSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n = {}, {} samples, seed {}", c.n, c.samples, c.seed);
    let _ = writeln!(
        s,
        "certified >= A_n {}   inconclusive {}   strictly smaller {}",
        c.counts.an_certified, c.counts.inconclusive, c.counts.smaller
    );
    let rate = c.agreement_rate().map_or("n/a".into(), |r| format!("{:.1}%", 100.0 * r));
    let _ = writeln!(s, "certified fraction {:.3}   scan agreement {rate} ({}/{})", c.certified_fraction(), c.agreeing, c.counts.an_certified);
    if !c.violations.is_empty() {
        let _ = writeln!(s, "VIOLATIONS (seeds): {:?}", c.violations);
    }
    if !c.undecided.is_empty() {
        let _ = writeln!(s, "undecided (seeds): {:?}", c.undecided);
    }
    s
}

pub fn krylov(v: &BlockKrylovVerdict, gram: Option<&GramCheck>) -> String {
    let mut s = String::new();
    let radii: Vec<String> = v.spec.radii.iter().map(u32::to_string).collect();
    let _ = writeln!(
        s,
        "vertices {} radii ({}) columns {}",
        one_based(&v.spec.vertices),
        radii.join(","),
        one_based(&v.spec.columns)
    );
    let _ = writeln!(s, "distance condition {}", if v.distance_condition { "holds" } else { "fails" });
    for d in &v.violations {
        let _ = writeln!(
            s,
            "  d({}, {}) = {} <= {}",
            d.pair.0 + 1,
            d.pair.1 + 1,
            d.distance,
            d.required_above
        );
    }
    let _ = writeln!(s, "block minor {:?}, full rank {}", v.status, v.full_rank);
    if let Some(g) = gram {
        let z = g.value.to_complex64();
        let _ = writeln!(s, "gram value {:.6}{:+.6}i expected {} contained {}", z.re, z.im, g.expected, g.contains);
    }
    s
}
