//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use skewbrace::brace::{verify_brace, ybe_apply, ybe_map, Brace};
use skewbrace::group::{close_subgroup, element_order, iso_onto, quotient, Group, Subgroup};
use skewbrace::holomorph::is_regular_subgroup;
use skewbrace::oracle::{cross_validate, enumerate_regular_subgroups, roster_group, CrossReport};
use skewbrace::psl25::{build_example, verify_example, ExampleData, VerifyOptions};
use skewbrace::sampling::Regime;
use skewbrace::theorem_a::{construct_brace, extract_with_inner, Construction};

const SEED: u64 = 0;
const BRACE_SAMPLES: u64 = 1_000_000;
const YBE_SAMPLES: u64 = 100_000;
const EXAMPLE_LIMIT: Duration = Duration::from_secs(120);
const CONSTRUCTION_LIMIT: Duration = Duration::from_secs(600);
const S3_LIMIT: Duration = Duration::from_secs(5);
const S4_LIMIT: Duration = Duration::from_secs(600);

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn time(&mut self, elapsed: Duration, limit: Duration, what: &str) {
        self.require(
            elapsed <= limit,
            format!("{what} took {:.1}s > {}s", elapsed.as_secs_f64(), limit.as_secs()),
        );
    }
}

fn report(id: u32, title: &str, o: &Outcome, elapsed: Duration) -> bool {
    let ok = o.failures.is_empty();
    let status = if ok { "PASS" } else { "FAIL" };
    println!("{status} {id} {title} ({:.1}s)", elapsed.as_secs_f64());
    for f in &o.failures {
        println!("     {f}");
    }
    ok
}

fn criterion_1(data: &ExampleData) -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let g = data.pgaml.as_ref();
    let r = verify_example(
        data,
        VerifyOptions {
            construct: false,
            ..Default::default()
        },
    );
    for c in r.failures() {
        o.require(false, format!("{}: expected {}, got {}", c.name, c.expected, c.actual));
    }
    let exact = |o: &mut Outcome, name: &str, expected: usize, actual: usize| {
        o.require(expected == actual, format!("{name} = {actual}, expected {expected}"));
    };
    exact(&mut o, "|X|", 600, data.x.order());
    exact(&mut o, "|Y|", 52, data.y.order());
    let fd = g.mul(data.f, data.d);
    let mut gens = data.inner.inn.generators().to_vec();
    gens.push(fd);
    exact(&mut o, "|Inn(K)<fd>|", 15600, close_subgroup(g, &gens).order());
    exact(
        &mut o,
        "|X∩Y|",
        2,
        data.x.intersection(g, &data.y).map(|s| s.order()).unwrap_or(0),
    );
    exact(&mut o, "|N|", 150, data.n.order());
    exact(&mut o, "|M|", 13, data.m.order());
    let parent: Arc<dyn Group> = data.pgaml.clone();
    for (name, sub, normal, gen) in [
        ("X/N", &data.x, &data.n, data.c0fd),
        ("Y/M", &data.y, &data.m, data.u0fd),
    ] {
        let cyclic = quotient(parent.clone(), sub, normal)
            .map(|q| q.order() == 4 && q.project(gen).is_some_and(|c| element_order(&q, c) == 4))
            .unwrap_or(false);
        o.require(cyclic, format!("{name} is not C4"));
    }
    exact(&mut o, "|K|", 7800, data.aut.base().order());
    exact(&mut o, "|X||M|", 7800, data.x.order() * data.m.order());
    exact(&mut o, "|Y||N|", 7800, data.y.order() * data.n.order());
    exact(&mut o, "order(c1)", 12, element_order(g, data.c1));
    exact(&mut o, "|<c2,c3>|", 25, close_subgroup(g, &[data.c2, data.c3]).order());
    let lift = r
        .check("order((c0fd)^2), SL2(25) lift")
        .map(|c| c.actual.clone())
        .unwrap_or_default();
    o.require(lift == "8", format!("order((c0fd)^2) lift = {lift}, expected 8"));
    exact(&mut o, "order(u1)", 13, element_order(g, data.u1));
    exact(
        &mut o,
        "order((u0fd)^2)",
        2,
        element_order(g, g.mul(data.u0fd, data.u0fd)),
    );
    o.time(start.elapsed(), EXAMPLE_LIMIT, "verification");
    o
}

fn criterion_2(data: &ExampleData) -> (Outcome, Option<Construction>) {
    let mut o = Outcome::new();
    let start = Instant::now();
    let cons = match construct_brace(&data.datum()) {
        Ok(c) => c,
        Err(e) => {
            o.require(false, format!("construction failed: {e}"));
            return (o, None);
        }
    };
    o.require(cons.h.order() == 7800, format!("|H| = {}", cons.h.order()));
    let hol = skewbrace::holomorph::Holomorph::new(data.aut.clone());
    let regular = is_regular_subgroup(&hol, &cons.h.sorted_elements()).is_ok();
    o.require(regular, "H is not a regular subgroup");
    let br = verify_brace(
        &cons.brace,
        Regime::Sampled {
            samples: BRACE_SAMPLES,
            seed: SEED,
        },
    );
    o.require(
        br.triples_checked == BRACE_SAMPLES,
        format!("{} triples checked", br.triples_checked),
    );
    o.require(
        br.passed(),
        format!("brace violation {:?} {:?}", br.violation, br.mul_group_violation),
    );
    let mut seen = vec![false; cons.w.order()];
    let bijective = cons.hw_iso.len() == cons.w.order()
        && cons
            .hw_iso
            .iter()
            .all(|&i| !std::mem::replace(&mut seen[i as usize], true));
    o.require(bijective, "hw_iso is not a bijection onto W");
    let c = cons.brace.multiplicative();
    let mult = (0..200u32).all(|i| {
        let (a, b) = ((i * 7919) % 7800, (i * 104729 + 13) % 7800);
        cons.hw_iso[c.mul(a, b) as usize] == cons.w.mul(cons.hw_iso[a as usize], cons.hw_iso[b as usize])
    });
    o.require(mult, "hw_iso is not multiplicative");
    o.time(start.elapsed(), CONSTRUCTION_LIMIT, "construction and verification");
    (o, Some(cons))
}

fn criterion_3(data: &ExampleData, cons: Option<&Construction>) -> Outcome {
    let mut o = Outcome::new();
    let Some(cons) = cons else {
        o.require(false, "no constructed brace");
        return o;
    };
    match extract_with_inner(&cons.brace, data.aut.clone(), data.inner.clone()) {
        Ok(ex) => {
            o.require(ex.datum.x == data.x, "extracted X differs");
            o.require(ex.datum.y == data.y, "extracted Y differs");
            let c = cons.brace.multiplicative();
            o.require(
                ex.t.intersection(&c, &ex.v).map(|s| s.is_trivial()).unwrap_or(false),
                "T∩V ≠ 1",
            );
            let a = data.aut.as_ref();
            let alpha: Vec<u32> = (0..c.order() as u32)
                .map(|b| a.mul(data.inner.zeta(b), cons.h.lambda(b)))
                .collect();
            let pi: Vec<u32> = (0..c.order() as u32).map(|b| cons.h.lambda(b)).collect();
            let c_arc: Arc<dyn Group> = Arc::new(c.clone());
            let whole = Subgroup::whole(&c);
            let into = |f: &[u32], target: &Subgroup, kernel: &Subgroup| {
                let Ok(q) = quotient(c_arc.clone(), &whole, kernel) else {
                    return false;
                };
                let qgens = q.generators();
                let images: Vec<u32> = qgens.iter().map(|&g| f[q.representative(g) as usize]).collect();
                iso_onto(&q, a, &qgens, &images, target).is_ok()
                    && (0..c.order() as u32).filter(|&b| f[b as usize] == a.identity()).count() == kernel.order()
            };
            o.require(into(&alpha, &data.x, &ex.t), "C/T is not X");
            o.require(into(&pi, &data.y, &ex.v), "C/V is not Y");
        }
        Err(e) => o.require(false, format!("extraction failed: {e}")),
    }
    o
}

fn criterion_4(reports: &[(CrossReport, Duration)]) -> Outcome {
    let mut o = Outcome::new();
    for (r, elapsed) in reports {
        o.require(r.passed(), format!("{}: {:?}", r.group, r.failures.first()));
        o.require(
            r.entries.len() == r.census_size && r.census_size > 0,
            format!("{}: entries missing", r.group),
        );
        for e in &r.entries {
            let ok = e.brace_axioms && e.conditions && e.reconstructs_h && e.mul_groups_isomorphic && e.round_trip;
            o.require(ok, format!("{} entry {}", r.group, e.entry));
        }
        let limit = if r.group == "S3" { S3_LIMIT } else { S4_LIMIT };
        o.time(*elapsed, limit, &r.group);
    }
    o
}

fn criterion_5(reports: &[(CrossReport, Duration)], cons: Option<&Construction>) -> Outcome {
    let mut o = Outcome::new();
    for (r, _) in reports {
        for e in &r.entries {
            o.require(
                e.braid_relation && e.ybe_bijective,
                format!("{} entry {} solution", r.group, e.entry),
            );
        }
    }
    match cons {
        Some(c) => match ybe_map(
            &c.brace,
            Regime::Sampled {
                samples: YBE_SAMPLES,
                seed: SEED,
            },
        ) {
            Ok(y) => o.require(y.triples_checked == YBE_SAMPLES, "wrong sample count"),
            Err(e) => o.require(false, format!("order-7800 brace: {e}")),
        },
        None => o.require(false, "no constructed brace"),
    }
    for name in ["S3", "S4"] {
        let k = roster_group(name).unwrap().base().clone();
        let b = Brace::trivial(k.clone());
        let n = k.order() as u32;
        let conj = (0..n).all(|x| (0..n).all(|y| ybe_apply(&b, x, y) == (y, k.mul(k.mul(k.inv(y), x), y))));
        o.require(conj, format!("trivial brace on {name} is not conjugation"));
    }
    o
}

fn criterion_6(reports: &[(CrossReport, Duration)]) -> Outcome {
    let mut o = Outcome::new();
    let Some((s4, _)) = reports.iter().find(|(r, _)| r.group == "S4") else {
        o.require(false, "no S4 census");
        return o;
    };
    o.require(!s4.corollary.is_empty(), "no disjoint pairs");
    o.require(
        s4.failures.iter().all(|f| !f.stage.starts_with("corollary")),
        "corollary failures",
    );
    for c in &s4.corollary {
        o.require(
            c.conditions && c.constructed && c.subdirect,
            format!("pair X{} Y{}", c.x_index, c.y_index),
        );
    }
    o
}

fn census_json(threads: usize) -> String {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let ctx = skewbrace::oracle::roster_context("S4").unwrap();
        let c = enumerate_regular_subgroups("S4", ctx.aut.clone(), 24).unwrap();
        let r = cross_validate(&c, ctx.aut.clone());
        serde_json::to_string(&skewbrace::io::encode_census(&ctx, &c, &r)).unwrap()
    })
}

fn example_json(threads: usize, data: &ExampleData) -> String {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| serde_json::to_string(&verify_example(data, VerifyOptions::default())).unwrap())
}

fn criterion_7(data: &ExampleData) -> Outcome {
    let mut o = Outcome::new();
    let census: Vec<String> = [1, 1, 4, 8].iter().map(|&t| census_json(t)).collect();
    o.require(
        census.windows(2).all(|w| w[0] == w[1]),
        "census output differs across runs",
    );
    let example: Vec<String> = [1, 4, 8].iter().map(|&t| example_json(t, data)).collect();
    o.require(
        example.windows(2).all(|w| w[0] == w[1]),
        "verify-example output differs across runs",
    );
    o
}

fn main() -> ExitCode {
    let mut all = true;
    let data = match build_example() {
        Ok(d) => d,
        Err(e) => {
            println!("FAIL 1-3,7: example does not build: {e}");
            return ExitCode::FAILURE;
        }
    };

    let t = Instant::now();
    all &= report(1, "worked example values", &criterion_1(&data), t.elapsed());

    let t = Instant::now();
    let (o, cons) = criterion_2(&data);
    all &= report(2, "construction at order 7800", &o, t.elapsed());

    let t = Instant::now();
    all &= report(3, "round trip", &criterion_3(&data, cons.as_ref()), t.elapsed());

    let t = Instant::now();
    let reports: Vec<(CrossReport, Duration)> = ["S3", "S4"]
        .iter()
        .map(|&name| {
            let start = Instant::now();
            let aut = roster_group(name).unwrap();
            let c = enumerate_regular_subgroups(name, aut.clone(), 24).unwrap();
            let r = cross_validate(&c, aut);
            (r, start.elapsed())
        })
        .collect();
    all &= report(
        4,
        "oracle equivalence on S3 and S4",
        &criterion_4(&reports),
        t.elapsed(),
    );

    let t = Instant::now();
    all &= report(5, "Yang-Baxter", &criterion_5(&reports, cons.as_ref()), t.elapsed());

    let t = Instant::now();
    all &= report(6, "disjoint pairs", &criterion_6(&reports), t.elapsed());

    let t = Instant::now();
    all &= report(7, "determinism", &criterion_7(&data), t.elapsed());

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
