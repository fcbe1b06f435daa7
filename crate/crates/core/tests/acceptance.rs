//! Acceptance criteria. Each test prints one PASS/FAIL line per criterion
//! (run with `--nocapture` to see them) and fails if the criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::time::{Duration, Instant};

use fieldlhv::chsh::{self, PhaseDomain};
use fieldlhv::ghz;
use fieldlhv::oracle;
use fieldlhv::qubit::{self, Axis, BlochVector, EvolutionMode, Permutation, PermutationMix};
use fieldlhv::{Q8Element, Sign};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TSIRELSON: f64 = 2.0 * SQRT_2;

/// Prints the verdict line, then asserts every sub-condition.
fn verdict(id: u32, title: &str, elapsed: Duration, budget: Duration, conditions: &[(&str, bool)]) {
    let timely = elapsed < budget;
    let ok = timely && conditions.iter().all(|(_, c)| *c);
    println!(
        "[{}] criterion {id}: {title} ({:.3} ms, budget {:.0} ms)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64() * 1e3,
        budget.as_secs_f64() * 1e3
    );
    for (name, c) in conditions {
        if !c {
            println!("    failed: {name}");
        }
    }
    if !timely {
        println!("    failed: runtime");
    }
    assert!(ok, "criterion {id} failed");
}

#[test]
fn criterion_1_chsh_achievement() {
    let start = Instant::now();
    let value = chsh::bell_expression(&chsh::make_achieving_model()).unwrap();
    let elapsed = start.elapsed();
    verdict(
        1,
        "achieving model reaches 2√2 within 1e-9",
        elapsed,
        Duration::from_millis(1),
        &[("bell_expression = 2√2", (value - TSIRELSON).abs() <= 1e-9)],
    );
}

#[test]
fn criterion_2_chsh_randomized_bounds() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut max_complex = f64::NEG_INFINITY;
    let mut max_real = f64::NEG_INFINITY;
    for _ in 0..10_000 {
        let m = chsh::random_model(&mut rng, 16, PhaseDomain::Circle);
        max_complex = max_complex.max(chsh::bell_expression(&m).unwrap());
    }
    for _ in 0..10_000 {
        let m = chsh::random_model(&mut rng, 16, PhaseDomain::Real);
        max_real = max_real.max(chsh::bell_expression(&m).unwrap());
    }
    let elapsed = start.elapsed();
    println!("    max complex = {max_complex:.12}, max real = {max_real:.12}");
    verdict(
        2,
        "10⁴ random models ≤ 2√2 + 1e-9; real-valued ≤ 2 + 1e-9",
        elapsed,
        Duration::from_secs(5),
        &[
            ("complex ≤ 2√2 + 1e-9", max_complex <= TSIRELSON + 1e-9),
            ("real ≤ 2 + 1e-9", max_real <= 2.0 + 1e-9),
        ],
    );
}

#[test]
fn criterion_3_optimizer() {
    let start = Instant::now();
    let mut results = Vec::new();
    for (grid, seed) in [(8, 7), (9, 1), (12, 2), (16, 7), (20, 3)] {
        let (_, v) = chsh::maximize_bell(grid, 50, seed).unwrap();
        results.push((grid, v));
    }
    let elapsed = start.elapsed();
    for (grid, v) in &results {
        println!("    grid {grid}: {v:.12}");
    }
    verdict(
        3,
        "maximize_bell with grid ≥ 8 within [2√2 − 1e-6, 2√2 + 1e-9]",
        elapsed,
        Duration::from_secs(1),
        &[
            ("≥ 2√2 − 1e-6", results.iter().all(|(_, v)| *v >= TSIRELSON - 1e-6)),
            ("≤ 2√2 + 1e-9", results.iter().all(|(_, v)| *v <= TSIRELSON + 1e-9)),
        ],
    );
}

#[test]
fn criterion_4_ghz_enumeration() {
    let start = Instant::now();
    let inter = ghz::ghz_intersection();
    let listed = ghz::listed_intersection_families();
    let all_minus_i = inter.iter().all(|a| ghz::xxx_product(a) == Q8Element::MINUS_I);
    let proof = ghz::classical_parity_check();
    let elapsed = start.elapsed();
    println!(
        "    intersection size = {}, listed families size = {}, classical satisfying = {}",
        inter.len(),
        listed.len(),
        proof.satisfying
    );
    verdict(
        4,
        "GHZ intersection is the 32-element four-family listing; x-product −i; classical +1",
        elapsed,
        Duration::from_millis(10),
        &[
            ("|intersection| = 32", inter.len() == 32),
            ("intersection = listed families", inter == listed),
            ("xxx_product = −i on every element", all_minus_i),
            ("classical product constant +1", proof.constant_product == Some(1)),
        ],
    );
}

#[test]
fn criterion_5_quantum_oracle_agreement() {
    let start = Instant::now();
    let psi = oracle::ghz_state();
    let plus = oracle::ghz_operators()
        .iter()
        .all(|op| oracle::verify_eigenrelation(op, &psi, 1.0).unwrap());
    let minus = oracle::verify_eigenrelation(&oracle::pauli_string([Axis::X; 3]), &psi, -1.0).unwrap();
    let elapsed = start.elapsed();
    verdict(
        5,
        "O₁, O₂, O₃ have eigenvalue +1 and σₓσₓσₓ has −1 on the GHZ state (1e-12)",
        elapsed,
        Duration::from_millis(10),
        &[("O_i |Ψ⟩ = +|Ψ⟩", plus), ("XXX |Ψ⟩ = −|Ψ⟩", minus)],
    );
}

#[test]
fn criterion_6_qubit_distribution() {
    let start = Instant::now();
    let c = 1.0 / 3f64.sqrt();
    let p8 = qubit::state_distribution(&BlochVector::new(c, c, c).unwrap())
        .get(qubit::Lambda::new(8).unwrap());
    let negative_value = (p8 - (1.0 - 3f64.sqrt()) / 8.0).abs() <= 1e-12;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut retro, mut vs_bloch, mut vs_quantum) = (true, 0.0f64, 0.0f64);
    for _ in 0..1_000 {
        let surface = rng.gen_bool(0.5);
        let r = BlochVector::random(&mut rng, surface);
        let d = qubit::state_distribution(&r);
        retro &= qubit::retroaction_check(&d);
        for axis in Axis::ALL {
            let hv = qubit::axis_expectation(&d, axis);
            vs_bloch = vs_bloch.max((hv - r.component(axis)).abs());
            vs_quantum = vs_quantum.max((hv - oracle::axis_expectation(&r, axis)).abs());
        }
    }
    let elapsed = start.elapsed();
    println!("    p(8) = {p8:.12}, max |hv − r| = {vs_bloch:e}, max |hv − quantum| = {vs_quantum:e}");
    verdict(
        6,
        "p(8) = (1−√3)/8; retroaction and axis agreement over 10³ Bloch vectors",
        elapsed,
        Duration::from_secs(1),
        &[
            ("p(8) = (1 − √3)/8", negative_value),
            ("retroaction holds", retro),
            ("axis expectation = r_axis", vs_bloch <= 1e-12),
            ("axis expectation = Tr(ρσ)", vs_quantum <= 1e-12),
        ],
    );
}

#[test]
fn criterion_7_sign_function_search() {
    let mut slowest = Duration::ZERO;
    let mut timed = |n: [f64; 3]| {
        let start = Instant::now();
        let found = qubit::sign_function_search(n).unwrap();
        slowest = slowest.max(start.elapsed());
        found
    };
    let mut axes_found = true;
    for axis in Axis::ALL {
        for sign in [Sign::Plus, Sign::Minus] {
            axes_found &= timed(axis.unit_vector().map(|c| c * sign.as_f64())).is_some();
        }
    }
    let c = 1.0 / 3f64.sqrt();
    let diagonal_absent = timed([FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]).is_none();
    let body_diagonal_absent = timed([c, c, c]).is_none();
    verdict(
        7,
        "sign functions exist for the six signed axes only",
        slowest,
        Duration::from_millis(100),
        &[
            ("six signed axes succeed", axes_found),
            ("(1/√2, 1/√2, 0) fails", diagonal_absent),
            ("(1/√3, 1/√3, 1/√3) fails", body_diagonal_absent),
        ],
    );
}

#[test]
fn criterion_8_evolution() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let flip = Permutation::x_flip();
    let mut exact = true;
    for _ in 0..100 {
        let surface = rng.gen_bool(0.5);
        let r = BlochVector::random(&mut rng, surface);
        let moved = qubit::evolve_permutation(&qubit::state_distribution(&r), &flip, EvolutionMode::Strict).unwrap();
        let target = qubit::state_distribution(&BlochVector::new(-r.rx, r.ry, r.rz).unwrap());
        exact &= moved == target;
    }

    // mixtures of permutations built from swaps of antipodal pairs, which
    // commute with m ↦ 9 − m
    let pairs = [(1u8, 8u8), (2, 7), (3, 6), (4, 5)];
    let commuting_perm = |rng: &mut ChaCha8Rng| {
        let mut order = [0usize, 1, 2, 3];
        order.shuffle(rng);
        let mut images = [0u8; 8];
        for (k, &(m, a)) in pairs.iter().enumerate() {
            let (tm, ta) = pairs[order[k]];
            let (tm, ta) = if rng.gen_bool(0.5) { (tm, ta) } else { (ta, tm) };
            images[usize::from(m - 1)] = tm;
            images[usize::from(a - 1)] = ta;
        }
        Permutation::from_images(images).unwrap()
    };
    let mut preserved = true;
    let mut all_commute = true;
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let mut raw: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 0.01).collect();
        let total: f64 = raw.iter().sum();
        raw.iter_mut().for_each(|w| *w /= total);
        let residue = 1.0 - raw.iter().sum::<f64>();
        raw[0] += residue;
        let terms: Vec<(Permutation, f64)> = raw.into_iter().map(|w| (commuting_perm(&mut rng), w)).collect();
        all_commute &= terms.iter().all(|(s, _)| s.commutes_with_antipode());
        let mix = PermutationMix::new(terms).unwrap();
        let r = BlochVector::random(&mut rng, true);
        let out = qubit::evolve_mixture(&qubit::state_distribution(&r), &mix).unwrap();
        preserved &= qubit::retroaction_check(&out) && (out.total() - 1.0).abs() <= 1e-12;
    }
    let elapsed = start.elapsed();
    verdict(
        8,
        "x-flip maps r to (−r_x, r_y, r_z) exactly; commuting mixtures keep pair sums 1/4",
        elapsed,
        Duration::from_secs(1),
        &[
            ("x-flip exact on 100 vectors", exact),
            ("sampled permutations commute with the involution", all_commute),
            ("mixtures preserve retroaction", preserved),
        ],
    );
}

#[test]
fn criterion_9_tsirelson_cross_check() {
    let start = Instant::now();
    let (x, y) = ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
    let h = FRAC_1_SQRT_2;
    let optimal = oracle::chsh_quantum_value(x, y, [h, h, 0.0], [h, -h, 0.0]).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut max_q = f64::NEG_INFINITY;
    for _ in 0..1_000 {
        let mut unit = || {
            let (t, p) = (rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
            [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()]
        };
        let (a, ap, b, bp) = (unit(), unit(), unit(), unit());
        max_q = max_q.max(oracle::chsh_quantum_value(a, ap, b, bp).unwrap());
    }
    let elapsed = start.elapsed();
    println!("    optimal = {optimal:.12}, max random = {max_q:.12}");
    verdict(
        9,
        "quantum CHSH value is 2√2 at optimal settings and never above it",
        elapsed,
        Duration::from_secs(2),
        &[
            ("optimal = 2√2 within 1e-6", (optimal - TSIRELSON).abs() <= 1e-6),
            ("random ≤ 2√2 + 1e-9", max_q <= TSIRELSON + 1e-9),
        ],
    );
}
