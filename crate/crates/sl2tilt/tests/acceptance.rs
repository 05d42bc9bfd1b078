//! Acceptance gate: one test per top-level criterion, each ending in a
//! single PASS line (or a panic with the counterexample).

use std::time::{Duration, Instant};

use sl2tilt::basep;
use sl2tilt::error::Error;
use sl2tilt::ffmod::Oracle;
use sl2tilt::frob;
use sl2tilt::homcount::{self, ExtensionVerdict, HomQuery};
use sl2tilt::render;
use sl2tilt::symbols::{self, StableSymbol};
use sl2tilt::tilt::{self, BlockFilter, Event};
use sl2tilt::GroupParams;

const GRID: [(u32, u32); 7] = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)];

fn gp(p: u32, n: u32) -> GroupParams {
    GroupParams::new(p, n).unwrap()
}

fn pass(n: u32, msg: &str) {
    println!("PASS criterion {n}: {msg}");
}

#[test]
fn criterion_1_table_reproduction() {
    for name in render::FIXTURE_NAMES {
        let t0 = Instant::now();
        render::check_fixture(name).unwrap_or_else(|e| panic!("FAIL criterion 1 at {name}: {e}"));
        let dt = t0.elapsed();
        assert!(dt < Duration::from_secs(1), "{name} took {dt:?}");
    }
    pass(1, "all reference tables reproduced cell-by-cell in < 1 s each");
}

#[test]
fn criterion_2_final_state_law() {
    let t0 = Instant::now();
    for (p, n) in GRID {
        let params = gp(p, n);
        let run = tilt::run(&params, BlockFilter::All, false)
            .unwrap_or_else(|e| panic!("FAIL criterion 2 at ({p},{n}): {e}"));
        assert!(
            tilt::verify_final(run.states.last().unwrap(), &params).unwrap(),
            "FAIL criterion 2: final law broken at ({p},{n})"
        );
    }
    let dt = t0.elapsed();
    assert!(dt < Duration::from_secs(10), "grid took {dt:?}");
    pass(2, "final symbol is U_1 M_a' on the whole (p,n) grid in < 10 s");
}

#[test]
fn criterion_3_closed_form_equals_simulation() {
    for (p, n) in GRID {
        let params = gp(p, n);
        // run() itself asserts state to closed-form equality per step; redo
        // the comparison explicitly so this criterion stands alone
        let run = tilt::run(&params, BlockFilter::All, false).unwrap();
        for state in &run.states {
            let reference = tilt::closed_form(&params, state.m, BlockFilter::All).unwrap();
            for (&a, &sym) in &state.assignment {
                assert!(
                    symbols::symbols_equal(sym, reference.assignment[&a], &params),
                    "FAIL criterion 3: mismatch at ({p},{n}), m = {}, a = {a}",
                    state.m
                );
            }
        }
    }
    pass(3, "simulated states equal the closed form at every step, zero mismatches");
}

#[test]
fn criterion_4_counting_formulas_equal_matrix_oracle() {
    let t0 = Instant::now();
    for (p, n) in [(2, 2), (2, 3), (3, 2)] {
        let params = gp(p, n);
        let oracle = Oracle::new(params).unwrap();
        for b in 0..params.modulus {
            for c in 0..params.modulus {
                for d in 0..params.modulus {
                    let q = HomQuery { j: 0, b, jj: d, c };
                    let hom = homcount::stable_hom_dim(q.clone(), &params).unwrap() as usize;
                    let ext = homcount::ext1_dim(q, &params).unwrap() as usize;
                    let ohom = oracle.stable_hom_symbols(0, b, d, c).unwrap();
                    let oext = oracle.ext1_symbols(0, b, d, c).unwrap();
                    assert!(
                        hom == ohom && ext == oext,
                        "FAIL criterion 4 at ({p},{n}) b={b} c={c} twist={d}: \
                         formula ({hom},{ext}) vs oracle ({ohom},{oext})"
                    );
                }
            }
        }
    }
    let dt = t0.elapsed();
    assert!(dt < Duration::from_secs(300), "grids took {dt:?}");
    pass(4, "stable Hom and Ext^1 formulas match the matrix oracle on full grids");
}

#[test]
fn criterion_5_extension_dichotomy() {
    for (p, n) in GRID {
        let params = gp(p, n);
        // formula-discovery mode internally asserts every runtime extension
        // space is at most one-dimensional and that no ceiling form admits a
        // residual extension; a violation surfaces as an error here
        let run = tilt::run(&params, BlockFilter::All, true)
            .unwrap_or_else(|e| panic!("FAIL criterion 5 at ({p},{n}): {e}"));
        for &(m, a, e) in &run.log.0 {
            // the dichotomy is stated for the rewritten symbol of a at step m
            let rw = tilt::rewrite_for_step(&run.states[m as usize - 1], m, &params).unwrap();
            let idx = rw
                .l_prime
                .iter()
                .find(|&&(col, _)| col == a)
                .map(|&(_, sym)| sym.idx);
            match e {
                Event::ExtendedBy { completion, .. } => {
                    let idx = idx.expect("extended symbols are floor forms");
                    match homcount::ext_cor1(m, idx, &params).unwrap() {
                        ExtensionVerdict::Unique { partner_index, .. } => {
                            assert_eq!(
                                partner_index, completion,
                                "FAIL criterion 5: completion mismatch at ({p},{n}) m={m} a={a}"
                            );
                        }
                        ExtensionVerdict::None => {
                            panic!("FAIL criterion 5: event without verdict at ({p},{n}) m={m} a={a}")
                        }
                    }
                }
                Event::SkippedZero => {
                    let idx = idx.expect("skipped symbols are floor forms");
                    let v = homcount::ext_cor1(m, idx, &params).unwrap();
                    assert!(
                        matches!(v, ExtensionVerdict::Unique { partner_index, .. }
                            if partner_index == params.q - 1),
                        "FAIL criterion 5: bad skip at ({p},{n}) m={m} a={a}"
                    );
                }
                _ => {}
            }
        }
    }
    pass(5, "ext_cor1/ext_cor2 verdicts match the raw counts; all extension dims in {0,1}");
}

#[test]
fn criterion_6_perversity_ledger() {
    for (p, n) in GRID {
        let params = gp(p, n);
        let run = tilt::run(&params, BlockFilter::All, false).unwrap();
        let ledger = tilt::shift_ledger(&run.log);
        for (&a, &count) in &ledger {
            let expect = params.pow(params.n - 1 - basep::layer(a, &params).unwrap()) as u64;
            assert_eq!(
                count, expect,
                "FAIL criterion 6: shift count of S_{a} at ({p},{n})"
            );
        }
    }
    // the two worked examples: shift degrees [1,1,2] and [1,1,1,3]
    let p22 = gp(2, 2);
    let l22 = tilt::shift_ledger(&tilt::run(&p22, BlockFilter::All, false).unwrap().log);
    assert_eq!((l22[&0], l22[&1], l22[&2]), (1, 1, 2));
    let p32 = gp(3, 2);
    let l32 = tilt::shift_ledger(&tilt::run(&p32, BlockFilter::Even, false).unwrap().log);
    assert_eq!((l32[&0], l32[&2], l32[&4], l32[&6]), (1, 1, 1, 3));
    pass(6, "shift counts equal p^(n-1-layer) everywhere, matching the worked tables");
}

#[test]
fn criterion_7_block_exchange() {
    for (p, n) in GRID.iter().filter(|&&(p, _)| p != 2) {
        let params = gp(*p, *n);
        let run = tilt::run(&params, BlockFilter::All, false).unwrap();
        assert!(
            tilt::block_exchange_check(run.states.last().unwrap(), &params).unwrap(),
            "FAIL criterion 7: final images do not exchange blocks at ({p},{n})"
        );
    }
    pass(7, "final images of even simples are odd-indexed and vice versa for odd p");
}

#[test]
fn criterion_8_frobenius_construction() {
    let t0 = Instant::now();
    let p36 = gp(3, 6);
    assert_eq!(frob::z_sequence(77, &p36).unwrap(), vec![5, 5, 3, 4, 5, 4]);
    assert_eq!(frob::partition_of(77, &p36).unwrap(), vec![3, 2, 1, 0, 0, 0]);
    assert_eq!(frob::phi_prime(&[3, 2, 1], &p36), -18);
    for (p, n) in [(3, 2), (3, 3), (2, 4), (5, 2), (3, 6)] {
        let params = gp(p, n);
        for a in 0..params.modulus {
            assert_eq!(
                frob::total_omega(a, &params).unwrap(),
                frob::phi_prime(&frob::partition_of(a, &params).unwrap(), &params),
                "FAIL criterion 8: total_omega != phi'(lambda) at ({p},{n}), a = {a}"
            );
            let z = frob::z_sequence(a, &params).unwrap();
            for i in 0..z.len() {
                if z[i] < n - 1 {
                    assert_eq!(
                        z[(i + 1) % z.len()],
                        z[i] + 1,
                        "FAIL criterion 8: layer-increment law at ({p},{n}), a = {a}"
                    );
                }
            }
        }
    }
    // phi' injectivity on partitions of n: exact for n <= 2p+3, hence for
    // every n <= 12 once p >= 5; (2p+2,1,1) = (p+2,p+2) is the first collision
    for p in [2u32, 3, 5, 7, 11, 13] {
        let params = gp(p, 1);
        let bound = (2 * p as usize + 3).min(12);
        for n in 1..=12usize {
            let parts = partitions_of(n);
            let mut vals: Vec<i64> = parts
                .iter()
                .map(|lam| frob::phi_prime(lam, &params))
                .collect();
            let len = vals.len();
            vals.sort_unstable();
            vals.dedup();
            if n <= bound {
                assert_eq!(vals.len(), len, "FAIL criterion 8: collision at p={p}, n={n}");
            }
        }
        if (2 * p + 4) <= 12 {
            let a = vec![2 * p + 2, 1, 1];
            let b = vec![p + 2, p + 2];
            assert_eq!(frob::phi_prime(&a, &params), frob::phi_prime(&b, &params));
        }
    }
    let dt = t0.elapsed();
    assert!(dt < Duration::from_secs(30), "criterion 8 took {dt:?}");
    pass(8, "worked example, omega identity, layer-increment law and phi' injectivity (sharp range n <= 2p+3, all n <= 12 for p >= 5)");
}

fn partitions_of(n: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            acc.push(part);
            rec(rest - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_9_oracle_self_tests() {
    for (p, n) in [(3, 2), (2, 2)] {
        let params = gp(p, n);
        // Oracle::new runs the convention checks (Borel relation,
        // sigma(U_1) = U_p, heads)
        let o = Oracle::new(params).unwrap();
        for b in 0..params.modulus {
            let m = o.build_m(b).unwrap();
            let digits = basep::to_digits(b, &params).unwrap().digits;
            let dim: usize = digits.iter().map(|&d| d as usize + 1).product();
            assert_eq!(m.dim, dim, "FAIL criterion 9: dim M_{b} at ({p},{n})");
            assert_eq!(
                o.head(&m),
                vec![(b, 1)],
                "FAIL criterion 9: head M_{b} at ({p},{n})"
            );
            // Heller translate law for rim modules:
            // Omega M_b = U_(-p^(s+1)) M_b' where s is the free digit
            if symbols::rim_free_digit(b, &params).is_some() {
                let s = basep::layer(b, &params).unwrap();
                let om = o.heller(&m).unwrap();
                let expect = o
                    .symbol_module(
                        StableSymbol::new(
                            -params.pow(s + 1),
                            0,
                            basep::partner(b, &params).unwrap(),
                            &params,
                        )
                        .unwrap(),
                    )
                    .unwrap();
                assert!(
                    o.is_isomorphic(&om, &expect),
                    "FAIL criterion 9: Heller law at ({p},{n}), b = {b}"
                );
            }
        }
        // the Steinberg restriction is projective
        let st = o.build_m(params.q - 1).unwrap();
        assert!(matches!(o.heller(&st), Err(Error::ProjectiveInput)));
        for i in 0..params.modulus {
            let tw = o.frobenius_twist(&o.build_u(i));
            assert_eq!(tw.t, o.build_u(params.p as i64 * i).t);
        }
    }
    // iFill short exact sequences for every valid (b, i) at p = 3, n = 2
    let p32 = gp(3, 2);
    let o = Oracle::new(p32).unwrap();
    for b in 0..p32.modulus {
        for i in 0..p32.n {
            if basep::digit(b, i, &p32) <= p32.p - 2 {
                assert!(
                    o.verify_ses_ifill(b, i, true).unwrap(),
                    "FAIL criterion 9: iFill sequence missing at b = {b}, i = {i}"
                );
            }
        }
    }
    pass(9, "oracle conventions, dimensions, Heller law, Steinberg projectivity and iFill sequences all verified");
}
