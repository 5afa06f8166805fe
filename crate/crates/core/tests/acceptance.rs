//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use booklink::construct::{connected_sum, rotate};
use booklink::diagram::to_planar_diagram;
use booklink::invariant::{bracket_by_slices, jones_by_slices, smooth, Smoothing};
use booklink::moves::{self, Routing, Strategy};
use booklink::poly::LaurentPoly;
use booklink::sample::{random_knot, random_word, SampleParams};
use booklink::spectrum::{composite_combine, split_combine, Spectrum};
use booklink::table::{
    default_data_dir, load_knot_data, load_witnesses, regenerate_rows, verify_witness, KnotRecord,
    VerifyError, WitnessEntry, KNOT_COUNT,
};
use booklink::trace::{backward_arcs, trace_components};
use booklink::word::{parse_word, BooklinkWord, Generator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIG8_PLAT: &str = "strands:0\ncup1 cup3 x2+ x2+ x1- x1- cap2 cap1";
const TREFOIL_PLAT: &str = "strands:0\ncup1 cup3 x2+ x2+ x2+ cap3 cap1";
const SMALL: SampleParams = SampleParams {
    max_width: 4,
    length: 8,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn(&Data) -> Verdict);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: u64) -> Result<Duration, String> {
    let t = start.elapsed();
    check(
        t < Duration::from_secs(limit),
        format!("took {t:.1?}, limit {limit}s"),
    )?;
    Ok(t)
}

struct Data {
    records: Vec<KnotRecord>,
    witnesses: Vec<WitnessEntry>,
}

fn table_reproduction(data: &Data) -> Verdict {
    let start = Instant::now();
    let rows = regenerate_rows(&data.records, &data.witnesses);
    let bad: Vec<String> = rows
        .iter()
        .filter_map(|r| r.as_ref().err())
        .map(|e| e.to_string())
        .collect();
    check(bad.is_empty(), bad.join("; "))?;
    check(rows.len() == KNOT_COUNT, format!("{} rows", rows.len()))?;
    let t = within(start, 60)?;
    Ok(format!(
        "{}/{} rows match in {t:.1?}",
        rows.len(),
        KNOT_COUNT
    ))
}

fn witness_verification(data: &Data) -> Verdict {
    let start = Instant::now();
    let mut shared = Vec::new();
    for w in &data.witnesses {
        match verify_witness(w, &data.records) {
            Ok(_) => {}
            Err(VerifyError::Ambiguous(r)) => {
                shared.push(format!("{} ~ {}", r.knot, r.candidates.join("/")))
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    let t = within(start, 30)?;
    let unique = data.witnesses.len() - shared.len();
    let note = if shared.is_empty() {
        String::new()
    } else {
        format!("; shared Jones: {}", shared.join(", "))
    };
    Ok(format!(
        "{} witnesses are (1,2)-representatives of their knots, {unique} unique, in {t:.1?}{note}",
        data.witnesses.len()
    ))
}

fn split_example() -> Verdict {
    let s = |t: &str| t.parse::<Spectrum>().unwrap();
    let got = split_combine(&s("{3,1,0}"), &s("{3,1,0}"));
    check(got == s("{6,4,2,1,0}"), format!("got {got}"))?;
    Ok(format!("{{3,1,0}} split {{3,1,0}} = {got}"))
}

fn random_spectrum(rng: &mut ChaCha8Rng) -> Spectrum {
    let mut v = vec![0, 1];
    for _ in 0..rng.gen_range(0..5) {
        v.push(v.last().unwrap() + rng.gen_range(1..4));
    }
    v.reverse();
    Spectrum::new(&v).unwrap()
}

fn spectrum_formulas() -> Verdict {
    let s = |t: &str| t.parse::<Spectrum>().unwrap();
    for (a, b, want) in [
        ("{2,1,0}", "{2,1,0}", "{3,2,1,0}"),
        ("{3,1,0}", "{2,1,0}", "{4,2,1,0}"),
    ] {
        let got = composite_combine(&s(a), &s(b));
        check(got == s(want), format!("composite {a} {b} gave {got}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let (a, b) = (random_spectrum(&mut rng), random_spectrum(&mut rng));
        let (n1, n2, d1, d2) = (
            a.braid_index(),
            b.braid_index(),
            a.bridge_index(),
            b.bridge_index(),
        );
        let sp = split_combine(&a, &b);
        check(
            sp.braid_index() == n1 + n2 && sp.bridge_index() == d1 + d2,
            format!("split {a} {b} = {sp}"),
        )?;
        let cp = composite_combine(&a, &b);
        check(
            cp.braid_index() == n1 + n2 - 1 && cp.bridge_index() == d1 + d2 - 1,
            format!("composite {a} {b} = {cp}"),
        )?;
        check(
            Spectrum::new(sp.values()).is_ok() && Spectrum::new(cp.values()).is_ok(),
            "invalid output",
        )?;
    }
    Ok("both composite evaluations exact; endpoints additive on 1000 random pairs".into())
}

/// Move statistics over generated knots. Jones must match exactly, since
/// every word here has one component.
fn moves_preserve(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut tally = [0usize; 8];
    let mut decreases = 0;
    let mut example = None;
    let mut words = 0;
    while words < 120 {
        let w = random_knot(rng, SMALL);
        words += 1;
        let v = jones_by_slices(&w);
        let (d, n) = (w.bridge_index(), w.braid_count());
        let same = |u: &BooklinkWord, name: &str| {
            check(
                jones_by_slices(u) == v,
                format!("{name} changed Jones of {w}"),
            )
        };
        let delta = |u: &BooklinkWord, dd: isize, dn: isize, name: &str| {
            let got = (
                u.bridge_index() as isize - d as isize,
                u.braid_count() as isize - n as isize,
            );
            check(
                got == (dd, dn),
                format!("{name} on {w}: delta {got:?}, expected {:?}", (dd, dn)),
            )
        };

        let counts = w.profile().counts;
        let t = rng.gen_range(0..counts.len());
        if counts[t] > 0 {
            let u = moves::add_critical_pair(&w, t, rng.gen_range(1..=counts[t]))
                .map_err(|e| e.to_string())?;
            same(&u, "add_critical_pair")?;
            delta(&u, 1, 0, "add_critical_pair")?;
            let back = moves::cancel_critical_pair(&u, t).map_err(|e| e.to_string())?;
            check(back == w, "cancel_critical_pair is not inverse")?;
            tally[0] += 1;
        }

        let s = moves::stabilize(&w).map_err(|e| e.to_string())?;
        same(&s, "stabilize")?;
        delta(&s, 0, 1, "stabilize")?;
        tally[1] += 1;
        let back = moves::destabilize(&s).map_err(|e| e.to_string())?;
        same(&back, "destabilize")?;
        delta(&back, 0, 0, "destabilize")?;
        tally[2] += 1;

        // A second crossing of opposite sign on the new outer strand gives an
        // exchange site, after checking the result is still a knot.
        let sc = s.profile().counts;
        let mut gens = s.generators().to_vec();
        let top = (0..gens.len())
            .find(|&k| gens[k].is_crossing() && gens[k].position + 1 == sc[k])
            .unwrap();
        let slots: Vec<usize> = (0..=gens.len())
            .filter(|&k| sc[k % sc.len()] >= 2)
            .collect();
        let at = slots[rng.gen_range(0..slots.len())];
        gens.insert(at, Generator::neg(sc[at % sc.len()] - 1));
        let e = BooklinkWord::new(s.seam_strands(), gens).unwrap();
        if trace_components(&e) == 1 {
            let site = if at <= top { top + 1 } else { top };
            let x =
                moves::exchange_move(&e, site).map_err(|err| format!("exchange on {e}: {err}"))?;
            check(
                jones_by_slices(&x) == jones_by_slices(&e),
                format!("exchange changed Jones of {e}"),
            )?;
            check(
                (x.bridge_index(), x.braid_count()) == (e.bridge_index(), e.braid_count()),
                "exchange delta",
            )?;
            tally[3] += 1;
        }

        if n > 0 {
            let u = moves::trade_braid_for_bridge(&w).map_err(|e| e.to_string())?;
            same(&u, "trade")?;
            delta(&u, 1, -1, "trade")?;
            tally[4] += 1;
        }

        for a in 0..backward_arcs(&w).len() {
            for r in [Routing::Innermost, Routing::Outermost] {
                let u = moves::resolve_bridge(&w, a, r).map_err(|e| e.to_string())?;
                same(&u, "resolve_bridge")?;
                check(
                    u.bridge_index() + 1 == d,
                    format!("resolve_bridge on {w}: d {d} -> {}", u.bridge_index()),
                )?;
                if u.braid_count() < n {
                    decreases += 1;
                    example.get_or_insert_with(|| {
                        format!(
                            "{} has n={n}, resolves to n={}",
                            w.to_string().trim().replace('\n', " "),
                            u.braid_count()
                        )
                    });
                }
                tally[5] += 1;
            }
        }

        if w.seam_strands() == 0 {
            if let Ok(u) = moves::plat_free_strand_resolve(&w) {
                same(&u, "plat_free_strand_resolve")?;
                check(
                    u.bridge_index() + 1 == d && u.braid_count() == 1,
                    "plat_free_strand_resolve delta",
                )?;
                tally[6] += 1;
            }
        }

        let b = moves::to_braid(&w, Strategy::Greedy).map_err(|e| e.to_string())?;
        same(&b, "to_braid")?;
        check(b.bridge_index() == 0, "to_braid left caps")?;
        tally[7] += 1;
    }
    for text in [FIG8_PLAT, TREFOIL_PLAT] {
        let w = parse_word(text).unwrap();
        let u = moves::plat_free_strand_resolve(&w).map_err(|e| e.to_string())?;
        check(
            jones_by_slices(&u) == jones_by_slices(&w),
            "plat_free_strand_resolve changed Jones",
        )?;
        check(
            (u.bridge_index(), u.braid_count()) == (w.bridge_index() - 1, 1),
            "plat_free_strand_resolve delta",
        )?;
        tally[6] += 1;
    }
    let names = [
        "add/cancel pair",
        "stabilize",
        "destabilize",
        "exchange",
        "trade",
        "resolve_bridge",
        "plat free strand",
        "to_braid",
    ];
    let summary: Vec<String> = names
        .iter()
        .zip(tally)
        .map(|(n, c)| format!("{n} {c}"))
        .collect();
    let mut out = format!("{words} knots; {}", summary.join(", "));
    if let Some(ex) = example {
        out.push_str(&format!(
            "; note: resolve_bridge lowered n in {decreases}/{} cases, e.g. {ex}",
            tally[5]
        ));
    }
    Ok(out)
}

fn skein_and_kink(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let (mut skeins, mut kinks) = (0, 0);
    for _ in 0..100 {
        let w = random_word(rng, SMALL);
        let bracket = bracket_by_slices(&w);
        let crossings: Vec<usize> = (0..w.len())
            .filter(|&k| w.generators()[k].is_crossing())
            .collect();
        if !crossings.is_empty() {
            let k = crossings[rng.gen_range(0..crossings.len())];
            let a = bracket_by_slices(&smooth(&w, k, Smoothing::A).unwrap());
            let b = bracket_by_slices(&smooth(&w, k, Smoothing::B).unwrap());
            let rhs = &(&LaurentPoly::monomial(1, 1) * &a) + &(&LaurentPoly::monomial(-1, 1) * &b);
            check(bracket == rhs, format!("skein fails on {w} at {k}"))?;
            skeins += 1;
        }
        let counts = w.profile().counts;
        let t = rng.gen_range(0..counts.len());
        if counts[t] > 0 {
            let i = rng.gen_range(1..=counts[t]);
            let mut gens = w.generators().to_vec();
            let x = if rng.gen_bool(0.5) {
                Generator::pos(i)
            } else {
                Generator::neg(i)
            };
            let c = if rng.gen_bool(0.5) {
                Generator::cap(i)
            } else {
                Generator::cap(i + 1)
            };
            gens.splice(t..t, [Generator::cup(i + 1), x, c]);
            let k = BooklinkWord::new(w.seam_strands(), gens).unwrap();
            let dw = to_planar_diagram(&k).writhe() - to_planar_diagram(&w).writhe();
            check(dw.abs() == 1, "kink writhe")?;
            let factor = LaurentPoly::monomial(3 * dw, -1);
            check(
                bracket_by_slices(&k) == &factor * &bracket,
                format!("kink factor fails on {w}"),
            )?;
            kinks += 1;
        }
    }
    Ok(format!(
        "skein at {skeins} crossings, kink factor -A^(+-3) at {kinks} curls"
    ))
}

fn sum_multiplies(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut pairs: Vec<(BooklinkWord, BooklinkWord)> = vec![(
        parse_word(FIG8_PLAT).unwrap(),
        parse_word(TREFOIL_PLAT).unwrap(),
    )];
    while pairs.len() < 12 {
        let (a, b) = (random_knot(rng, SMALL), random_knot(rng, SMALL));
        if a.bridge_index() > 0 && b.bridge_index() > 0 {
            pairs.push((a, b));
        }
    }
    for (a, b) in &pairs {
        let s1 = rng.gen_range(0..a.bridge_index());
        let s2 = rng.gen_range(0..b.bridge_index());
        let s = connected_sum(a, b, s1, s2).map_err(|e| e.to_string())?;
        check(
            jones_by_slices(&s) == &jones_by_slices(a) * &jones_by_slices(b),
            format!("Jones not multiplicative for {a} # {b}"),
        )?;
        check(
            s.bridge_index() + 1 == a.bridge_index() + b.bridge_index(),
            "sum bridge index",
        )?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn rotation_invariance(data: &Data) -> Verdict {
    let mut total = 0;
    for w in &data.witnesses {
        for k in 0..w.word.len() as i64 {
            let n = rotate(&w.word, k).braid_count();
            check(
                n == w.word.braid_count(),
                format!("{} rotated by {k} has n={n}", w.knot),
            )?;
            total += 1;
        }
    }
    Ok(format!(
        "{total} rotations of {} witnesses",
        data.witnesses.len()
    ))
}

fn naive_oracle(rng: &mut ChaCha8Rng) -> Verdict {
    for _ in 0..1000 {
        let (a, b) = (random_spectrum(rng), random_spectrum(rng));
        let s = split_combine(&a, &b);
        for d in 0..=a.bridge_index() + b.bridge_index() {
            let mut best = u32::MAX;
            for i in 0..=a.bridge_index() {
                for j in 0..=b.bridge_index() {
                    if i + j == d {
                        best = best.min(a.at(i) + b.at(j));
                    }
                }
            }
            check(s.at(d) == best, format!("{a} split {b} at d={d}"))?;
        }
    }
    Ok("1000 random pairs".into())
}

fn invariant_suites(data: &Data) -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let parts = [
        ("a", moves_preserve(&mut rng)?),
        ("b", skein_and_kink(&mut rng)?),
        ("c", sum_multiplies(&mut rng)?),
        ("d", rotation_invariance(data)?),
        ("e", naive_oracle(&mut rng)?),
    ];
    let t = within(start, 60)?;
    let body: Vec<String> = parts.iter().map(|(k, v)| format!("({k}) {v}")).collect();
    Ok(format!("{} in {t:.1?}", body.join(" | ")))
}

fn to_braid_sanity(data: &Data) -> Verdict {
    let start = Instant::now();
    let braid_of = |name: &str| {
        data.records
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.braid)
            .unwrap()
    };
    let mut cases = vec![("4_1".to_string(), parse_word(FIG8_PLAT).unwrap())];
    cases.extend(
        data.witnesses
            .iter()
            .map(|w| (w.knot.clone(), w.word.clone())),
    );
    let mut widths = Vec::new();
    for (name, w) in &cases {
        let b = moves::to_braid(w, Strategy::Greedy).map_err(|e| format!("{name}: {e}"))?;
        check(b.bridge_index() == 0, format!("{name}: caps remain"))?;
        check(
            jones_by_slices(&b) == jones_by_slices(w),
            format!("{name}: Jones changed"),
        )?;
        let n = braid_of(name);
        check(
            b.braid_count() as u32 >= n,
            format!("{name}: {} strands beats braid index {n}", b.braid_count()),
        )?;
        widths.push(format!("{name}:{}", b.braid_count()));
    }
    let t = within(start, 60)?;
    Ok(format!(
        "{} braids, strands {} in {t:.1?}",
        cases.len(),
        widths.join(" ")
    ))
}

fn concavity(data: &Data) -> Verdict {
    let bad: Vec<String> = data
        .records
        .iter()
        .filter(|r| !r.spectrum.is_concave().0)
        .map(|r| format!("{} {}", r.name, r.spectrum))
        .collect();
    check(bad.is_empty(), format!("not concave: {}", bad.join(", ")))?;
    Ok(format!(
        "all {} spectra concave (consistency check)",
        data.records.len()
    ))
}

fn main() -> ExitCode {
    let dir = default_data_dir();
    let data = match (
        load_knot_data(&dir.join("knots.csv")),
        load_witnesses(&dir.join("witnesses")),
    ) {
        (Ok(records), Ok(witnesses)) => Data { records, witnesses },
        (Err(e), _) | (_, Err(e)) => {
            println!("cannot load data from {}: {e}", dir.display());
            return ExitCode::FAILURE;
        }
    };
    let criteria: [Criterion; 7] = [
        ("table reproduction", table_reproduction),
        ("witness verification", witness_verification),
        ("split example", |_| split_example()),
        ("spectrum formulas", |_| spectrum_formulas()),
        ("invariant suites", invariant_suites),
        ("to_braid sanity", to_braid_sanity),
        ("concavity", concavity),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run(&data) {
            Ok(msg) => println!("criterion {} PASS {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
