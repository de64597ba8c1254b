use std::fmt::Write as _;

use annular_skein::homology::{comult_well_defined_check, image_equals_relations, kernel_equality_check};
use annular_skein::matchings::{catalan, check_distance_lemma, enumerate_matchings, ArrowGraph};
use annular_skein::skein::{generators, rewrite_all_dotted, SkeinModule};
use annular_skein::springer::{frobenius_obstruction, RingElement, SpringerRing};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{check_ceiling, format_for, frobenius_verdict, rank_comparison, to_json, Cli, Failure, Format, NRange, Outcome};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub(crate) enum Suite {
    Counts,
    Khdist,
    Image,
    Kernel,
    Comult,
    Lemmas,
    Frobenius,
    Ranks,
    Freeness,
    All,
}

const ALL: [Suite; 9] = [
    Suite::Counts,
    Suite::Ranks,
    Suite::Freeness,
    Suite::Khdist,
    Suite::Lemmas,
    Suite::Image,
    Suite::Kernel,
    Suite::Comult,
    Suite::Frobenius,
];

/// Random triples drawn for the ring associativity spot check.
const RING_SAMPLES: usize = 64;

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Khdist => "khdist",
            Suite::Image => "image",
            Suite::Kernel => "kernel",
            Suite::Comult => "comult",
            Suite::Lemmas => "lemmas",
            Suite::Frobenius => "frobenius",
            Suite::Ranks => "ranks",
            Suite::Freeness => "freeness",
            Suite::All => "all",
        }
    }

    /// (default ceiling, ceiling with `--limit-override`)
    fn ceilings(self) -> (usize, usize) {
        match self {
            Suite::Counts | Suite::Khdist => (5, 6),
            Suite::Image | Suite::Lemmas => (4, 6),
            Suite::Kernel | Suite::Comult => (3, 4),
            _ => (5, 5),
        }
    }
}

#[derive(Serialize)]
struct Check {
    suite: &'static str,
    n: usize,
    status: &'static str,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<serde_json::Value>,
}

fn check(suite: Suite, n: usize, pass: bool, detail: String) -> Check {
    Check { suite: suite.name(), n, status: if pass { "PASS" } else { "FAIL" }, detail, certificates: None }
}

pub(crate) fn run(cli: &Cli, n: NRange, suite: Suite) -> Outcome {
    let format = format_for(cli, &[Format::Json, Format::Text], Format::Text)?;
    let suites: Vec<Suite> = if suite == Suite::All { ALL.to_vec() } else { vec![suite] };
    for s in &suites {
        let (default, hard) = s.ceilings();
        check_ceiling(n, default, hard, cli, &format!("suite {}", s.name()))?;
    }
    let mut checks = Vec::new();
    for k in n.iter() {
        for &s in &suites {
            checks.push(run_one(cli, s, k)?);
        }
    }
    let pass = checks.iter().all(|c| c.status != "FAIL");
    let text = match format {
        Format::Json => to_json(&checks),
        _ => {
            let mut out = String::new();
            for c in &checks {
                writeln!(out, "{} {} n={}: {}", c.status, c.suite, c.n, c.detail).unwrap();
            }
            out
        }
    };
    Ok((text, pass))
}

fn run_one(cli: &Cli, suite: Suite, n: usize) -> Result<Check, Failure> {
    Ok(match suite {
        Suite::Counts => {
            let c = catalan(n) as usize;
            let m = enumerate_matchings(n)?.len();
            let g = generators(n)?.len();
            let connected = ArrowGraph::new(n)?.is_connected();
            let pass = m == c && g == (1 << n) * c && connected;
            check(suite, n, pass, format!("{m} matchings (C_n = {c}), {g} generators, arrow graph connected: {connected}"))
        }
        Suite::Ranks => {
            let r = rank_comparison(n)?;
            check(suite, n, r.matches, format!("skein {:?} vs reversed ring {:?}", r.skein, r.ring_reversed))
        }
        Suite::Freeness => {
            let r = rank_comparison(n)?;
            check(suite, n, r.invariant_factors_all_one, "all invariant factors of skein and ring relation blocks are 1".into())
        }
        Suite::Khdist => {
            let r = check_distance_lemma(n)?;
            check(suite, n, r.holds(), format!("{} triples with additive distance, {} failures", r.triples_checked, r.failures.len()))
        }
        Suite::Lemmas => {
            let module = SkeinModule::new(n)?;
            let ms = enumerate_matchings(n)?;
            let mut pass = true;
            let (mut moves, mut expansions) = (0, 0);
            for a in &ms {
                let seq = rewrite_all_dotted(a)?;
                pass &= seq.last().map_or(a.is_outermost(), |mv| mv.to.is_outermost());
                pass &= seq.iter().all(|mv| module.relation_for_move(mv).is_some());
                moves += seq.len();
                for &arc in a.arcs() {
                    pass &= module.verify_expansion(arc, a)?;
                    expansions += 1;
                }
                pass &= module.check_sum_identity(a)?.holds;
            }
            check(
                suite,
                n,
                pass,
                format!("{} matchings: {moves} Type II moves, {expansions} alternating-sum expansions, sum identity", ms.len()),
            )
        }
        Suite::Image => {
            let r = image_equals_relations(&SkeinModule::new(n)?)?;
            check(suite, n, r.holds(), format!("image rank {}, relation rank {}, ambient {}", r.image_rank, r.relation_rank, r.ambient))
        }
        Suite::Kernel => {
            let r = kernel_equality_check(&SkeinModule::new(n)?, cli.limit_override)?;
            check(
                suite,
                n,
                r.holds(),
                format!(
                    "kernel ranks {} (all pairs) and {} (arrows), skein rank {}",
                    r.kernel_rank_all_pairs, r.kernel_rank_arrows, r.skein_total_rank
                ),
            )
        }
        Suite::Comult => {
            let module = SkeinModule::new(n)?;
            let r = comult_well_defined_check(&module, cli.limit_override)?;
            let certs: Vec<_> = r.verdicts.iter().filter_map(|v| v.certificate.as_ref()).collect();
            let mut c = check(
                suite,
                n,
                r.holds(),
                format!("{} membership certificates for {} relations", r.certificates(), module.relations().len()),
            );
            c.certificates = Some(serde_json::to_value(certs).expect("certificates serialize"));
            c
        }
        Suite::Frobenius => {
            let ring = SpringerRing::new(n)?;
            let r = frobenius_obstruction(&ring)?;
            let (assoc, samples) = ring_spot_check(&ring, cli.seed)?;
            let detail = format!(
                "top rank {} in degree {} (claim: 2), annihilation {} over {} products, {samples} sampled triples associative: {assoc}",
                r.top_rank, r.top_degree, r.annihilation, r.products_checked
            );
            match frobenius_verdict(&r) {
                None => Check { suite: suite.name(), n, status: "SKIP", detail: format!("outside hypothesis; {detail}"), certificates: None },
                Some(v) => check(suite, n, v && assoc, detail),
            }
        }
        Suite::All => unreachable!("expanded by the caller"),
    })
}

/// Associativity and commutativity on seeded random triples of basis monomials.
fn ring_spot_check(ring: &SpringerRing, seed: u64) -> Result<(bool, usize), Failure> {
    let basis = ring.flat_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..RING_SAMPLES {
        let mut pick = || RingElement::monomial(basis[rng.random_range(0..basis.len())]);
        let (a, b, c) = (pick(), pick(), pick());
        let ab = ring.multiply(&a, &b)?;
        ok &= ab == ring.multiply(&b, &a)?;
        ok &= ring.multiply(&ab, &c)? == ring.multiply(&a, &ring.multiply(&b, &c)?)?;
    }
    Ok((ok, RING_SAMPLES))
}
