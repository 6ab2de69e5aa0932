//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines always reach the terminal; exits nonzero if anything fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use giant_steps::corridor::{build_corridor, Disposition, Side};
use giant_steps::counting::{config_matrix, count_minimal_sequences, Config, Matrix2};
use giant_steps::farey::{farey_ball, farey_corridor, farey_geodesics, Fraction, UnimodularMap};
use giant_steps::invariants::{
    binary_to_steps, binary_to_turns, parse_binary, parse_steps, steps_to_binary, steps_to_turns,
    BinaryInvariants,
};
use giant_steps::oracle::{
    check_equivalence, corridor_graph, geodesic_count, geodesic_counts_from,
};
use giant_steps::stats::{block_occurrence, enumerate_counts};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const EXHAUSTIVE_LENGTH: usize = 12;
const EQUIVALENCE_BUDGET: Duration = Duration::from_secs(60);
const UNIMODULAR_TRIALS: usize = 100;
const FAREY_SEED: u64 = 0x6769_616e_7473;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn count_of(binary: &str) -> BigUint {
    count_minimal_sequences(&binary_to_steps(&parse_binary(binary).unwrap())).count
}

fn golden_example() -> Outcome {
    let r = count_minimal_sequences(&binary_to_steps(&parse_binary("0011100011100").unwrap()));
    use Config::*;
    ensure(r.configs == [R1, L2, L1, R2], || {
        format!("configs {:?}", r.configs)
    })?;
    let expected = [
        Matrix2::new(1u32, 1u32, 0u32, 1u32),
        Matrix2::new(1u32, 0u32, 1u32, 0u32),
        Matrix2::new(1u32, 0u32, 1u32, 1u32),
        Matrix2::new(0u32, 1u32, 0u32, 1u32),
    ];
    ensure(r.matrices == expected, || "matrices differ".into())?;
    ensure(r.product == Matrix2::new(2u32, 2u32, 2u32, 2u32), || {
        format!("product {}", r.product)
    })?;
    ensure(r.count == BigUint::from(4u32), || {
        format!("count {}", r.count)
    })?;
    Ok("R1 L2 L1 R2, product [[2,2],[2,2]], count 4".into())
}

fn conversion_golden() -> Outcome {
    let s = binary_to_steps(&parse_binary("0011100011100").unwrap());
    ensure(s.to_string() == "DRRRDRDLLLDLDRR", || format!("got {s}"))?;
    let b = steps_to_binary(&parse_steps("DRRRDRDLLLDLDRR").unwrap()).unwrap();
    ensure(b.to_string() == "0011100011100", || format!("got {b}"))?;
    Ok("0011100011100 <-> DRRRDRDLLLDLDRR".into())
}

fn fibonacci(n: usize) -> BigUint {
    // F_0 = F_1 = 1
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

fn example_families() -> Outcome {
    for n in 0..=20 {
        let got = count_of(&"10".repeat(n));
        ensure(got == fibonacci(n), || {
            format!("\"10\"x{n}: {got} != {}", fibonacci(n))
        })?;
    }
    for n in 0..=50 {
        let got = count_of(&"1".repeat(2 * n));
        ensure(got.is_one(), || format!("{} ones: {got}", 2 * n))?;
    }
    for n in 1..=50 {
        let got = count_of(&"1".repeat(2 * n - 1));
        ensure(got == BigUint::from(n + 1), || {
            format!("{} ones: {got}", 2 * n - 1)
        })?;
    }
    for n in 0..=50 {
        let got = count_of(&"100".repeat(n));
        ensure(got.is_one(), || format!("\"100\"x{n}: {got}"))?;
    }
    Ok("Fibonacci n<=20, all-ones n<=50, \"100\"xn n<=50".into())
}

fn big_integer() -> Outcome {
    let got = count_of(&"10".repeat(100));
    let want = fibonacci(100);
    ensure(got.bits() > 64, || "F_100 fits in 64 bits?".into())?;
    ensure(got == want, || format!("{got} != {want}"))?;
    Ok(format!("F_100 = {want}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut inputs = 0u64;
    for len in 0..=EXHAUSTIVE_LENGTH {
        for b in BinaryInvariants::all_of_length(len) {
            let rep = check_equivalence(&b);
            ensure(rep.agrees(), || format!("'{b}': {rep:?}"))?;
            inputs += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < EQUIVALENCE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{inputs} inputs in {:.1}s", elapsed.as_secs_f64()))
}

fn structural_invariants() -> Outcome {
    let mut inputs = 0u64;
    for len in 0..=EXHAUSTIVE_LENGTH {
        for b in BinaryInvariants::all_of_length(len) {
            let c = build_corridor(&binary_to_steps(&b)).unwrap();
            let k = c.run_count();
            let nabla = c.nabla_edges();
            ensure(nabla.len() == k, || {
                format!("'{b}': {} nabla-edges, k = {k}", nabla.len())
            })?;
            for (i, e) in nabla.iter().enumerate() {
                ensure(e.depth == i + 1, || {
                    format!("'{b}': nabla depth {}", e.depth)
                })?;
                ensure(
                    c.vertex(e.left).side == Side::Left && c.vertex(e.right).side == Side::Right,
                    || format!("'{b}': nabla({}) not across", e.depth),
                )?;
            }
            for (u, v) in c.edges() {
                if let (Some(a), Some(d)) = (c.vertex(u).depth, c.vertex(v).depth) {
                    ensure(a.abs_diff(d) <= 1, || format!("'{b}': edge {u}-{v}"))?;
                }
            }
            let want = match c.disposition() {
                Disposition::SpansBelow => k + 1,
                _ => k,
            };
            ensure(c.tau_depth() == want, || {
                format!("'{b}': tau depth {}", c.tau_depth())
            })?;
            inputs += 1;
        }
    }
    Ok(format!("{inputs} corridors"))
}

fn block_sparseness() -> Outcome {
    use Config::*;
    let block = [L1, R1, L1, R1];
    let product = block
        .iter()
        .fold(Matrix2::identity(), |acc, &c| &config_matrix(c) * &acc);
    ensure(product == Matrix2::new(5u32, 3u32, 3u32, 2u32), || {
        format!("product {product}")
    })?;
    ensure(
        product.entries().iter().all(|&x| *x > BigUint::one()),
        || "entry <= 1".into(),
    )?;
    let mut with_block = 0u64;
    for len in 0..=EXHAUSTIVE_LENGTH {
        for b in BinaryInvariants::all_of_length(len) {
            let r = count_minimal_sequences(&binary_to_steps(&b));
            if block_occurrence(&r.configs) {
                with_block += 1;
                ensure(r.count >= BigUint::from(2u32), || {
                    format!("'{b}': count {}", r.count)
                })?;
            }
        }
    }
    ensure(with_block > 0, || "block never occurs".into())?;
    Ok(format!(
        "[[5,3],[3,2]]; {with_block} inputs contain the block, all count >= 2"
    ))
}

fn ball_count(target: &Fraction) -> Result<(usize, BigUint), String> {
    let needed: Vec<Fraction> = if target.is_integer() {
        vec![target.clone()]
    } else {
        farey_corridor(target).map_err(|e| e.to_string())?.vertices
    };
    let mut generations = 0;
    loop {
        let ball = farey_ball(&Fraction::infinity(), generations).map_err(|e| e.to_string())?;
        if needed.iter().all(|x| ball.contains(x)) {
            break;
        }
        generations += 1;
    }
    let mut counts = Vec::new();
    for g in [generations, generations + 1] {
        let ball = farey_ball(&Fraction::infinity(), g).map_err(|e| e.to_string())?;
        let dst = ball.index_of(target).unwrap();
        counts.push(
            geodesic_count(
                &ball.graph,
                ball.index_of(&Fraction::infinity()).unwrap(),
                dst,
            )
            .unwrap(),
        );
    }
    ensure(counts[0] == counts[1], || {
        format!("{target}: ball count not stable")
    })?;
    Ok(counts.swap_remove(0))
}

fn random_fraction(rng: &mut StdRng) -> Fraction {
    if rng.random_range(0..20) == 0 {
        return Fraction::infinity();
    }
    let q: i64 = rng.random_range(1..=15);
    let p: i64 = rng.random_range(-40..=40);
    Fraction::new(p, q).unwrap()
}

fn random_map(rng: &mut StdRng) -> UnimodularMap {
    let mut g = UnimodularMap::identity();
    for _ in 0..rng.random_range(1..=8) {
        let step = match rng.random_range(0..3) {
            0 => UnimodularMap::translation(rng.random_range(-3i64..=3)),
            1 => UnimodularMap::inversion(),
            _ => UnimodularMap::reflection(),
        };
        g = step.compose(&g);
    }
    g
}

fn farey_validation() -> Outcome {
    let inf = Fraction::infinity();
    let mut checked = 0;
    for p in 1i64..30 {
        for q in 1i64..=30 - p {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let t = Fraction::new(p, q).unwrap();
            let fast = farey_geodesics(&inf, &t).map_err(|e| e.to_string())?;
            let slow = ball_count(&t)?;
            ensure(fast == slow, || format!("{t}: {fast:?} vs ball {slow:?}"))?;
            checked += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(FAREY_SEED);
    let mut trials = 0;
    while trials < UNIMODULAR_TRIALS {
        let (u, v) = (random_fraction(&mut rng), random_fraction(&mut rng));
        if u == v {
            continue;
        }
        let g = random_map(&mut rng);
        let before = farey_geodesics(&u, &v).map_err(|e| e.to_string())?;
        let after = farey_geodesics(&g.apply(&u), &g.apply(&v)).map_err(|e| e.to_string())?;
        ensure(before == after, || {
            format!("({u}, {v}) under {g:?}: {before:?} vs {after:?}")
        })?;
        let swapped = farey_geodesics(&v, &u).map_err(|e| e.to_string())?;
        ensure(before == swapped, || format!("({u}, {v}) not symmetric"))?;
        trials += 1;
    }
    Ok(format!(
        "{checked} targets match the ball oracle; {trials} unimodular trials"
    ))
}

fn round_trip() -> Outcome {
    let mut inputs = 0u64;
    for len in 0..=16 {
        for b in BinaryInvariants::all_of_length(len) {
            let s = binary_to_steps(&b);
            ensure(steps_to_binary(&s).as_ref() == Ok(&b), || {
                format!("'{b}' via {s}")
            })?;
            let reparsed = parse_steps(&s.to_string()).map_err(|e| e.to_string())?;
            ensure(reparsed == s, || format!("{s} does not reparse"))?;
            ensure(
                steps_to_turns(&s).as_ref() == Ok(&binary_to_turns(&b)),
                || format!("'{b}': turns disagree"),
            )?;
            inputs += 1;
        }
    }
    Ok(format!("{inputs} inputs, lengths 0..=16"))
}

fn oracle_histogram(len: usize) -> BTreeMap<BigUint, u64> {
    let mut h = BTreeMap::new();
    for b in BinaryInvariants::all_of_length(len) {
        let c = build_corridor(&binary_to_steps(&b)).unwrap();
        let cg = corridor_graph(&c);
        let counts = geodesic_counts_from(&cg.graph, cg.vertex(giant_steps::corridor::PI0));
        let (_, n) = counts[cg.vertex(c.tau())].clone().unwrap();
        *h.entry(n).or_insert(0) += 1;
    }
    h
}

fn stats_fixture() -> Outcome {
    let two = enumerate_counts(2).map_err(|e| e.to_string())?;
    let want: BTreeMap<BigUint, u64> = [(1u32, 3u64), (2, 1)]
        .into_iter()
        .map(|(k, v)| (BigUint::from(k), v))
        .collect();
    ensure(two.histogram == want, || {
        format!("length 2: {:?}", two.histogram)
    })?;
    for len in 0..=EXHAUSTIVE_LENGTH {
        let matrix = enumerate_counts(len).map_err(|e| e.to_string())?.histogram;
        let oracle = oracle_histogram(len);
        ensure(matrix == oracle, || {
            format!("length {len}: {matrix:?} vs {oracle:?}")
        })?;
    }
    Ok("length 2 is {1: 3, 2: 1}; histograms agree for lengths 0..=12".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden example", golden_example),
        ("conversion golden", conversion_golden),
        ("example families", example_families),
        ("big-integer count", big_integer),
        ("oracle equivalence", oracle_equivalence),
        ("structural invariants", structural_invariants),
        ("block sparseness", block_sparseness),
        ("Farey validation", farey_validation),
        ("round trip", round_trip),
        ("stats fixture", stats_fixture),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
