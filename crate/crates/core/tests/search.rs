use std::collections::{HashMap, HashSet};

use proptest::prelude::*;

use arrangements::combinatorics::{melchior, shnurnikov, ShnurnikovConstant};
use arrangements::config::FilterConfig;
use arrangements::enumeration::enumerate;
use arrangements::geometry::{intersection_summary, RationalArrangement};
use arrangements::realizability::{
    packing_max, partial_linear_space_exists, wiring_search, SearchLimits, SearchStatus, Witness,
};
use arrangements::WeakCombinatorics;

fn wc(d: u32, n2: u64, n3: u64, n4: u64) -> WeakCombinatorics {
    WeakCombinatorics::quad(d, n2, n3, n4).unwrap()
}

/// Largest family of `k`-subsets of `{0..v}` pairwise meeting in at most one
/// point, by plain recursion over all subsets.
fn brute_packing(v: u32, k: u32) -> u64 {
    let sets: Vec<u32> = (0u32..1 << v).filter(|m| m.count_ones() == k).collect();
    fn best(sets: &[u32], chosen: &mut Vec<u32>, from: usize) -> u64 {
        let mut top = chosen.len() as u64;
        for i in from..sets.len() {
            if chosen.iter().all(|&c| (c & sets[i]).count_ones() <= 1) {
                chosen.push(sets[i]);
                top = top.max(best(sets, chosen, i + 1));
                chosen.pop();
            }
        }
        top
    }
    best(&sets, &mut Vec::new(), 0)
}

#[test]
fn packing_against_brute_force() {
    for v in 3..=8 {
        let r = packing_max(v, 3, SearchLimits::default()).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.max, brute_packing(v, 3), "v = {v}, k = 3");
    }
    for v in 4..=9 {
        let r = packing_max(v, 4, SearchLimits::default()).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.max, brute_packing(v, 4), "v = {v}, k = 4");
    }
}

#[test]
fn packing_examples_and_monotonicity() {
    let quads: Vec<u64> = (4..=13).map(|v| packing_max(v, 4, SearchLimits::default()).unwrap().max).collect();
    assert_eq!(quads, vec![1, 1, 1, 2, 2, 3, 5, 6, 9, 13]);
    let triples: Vec<u64> = (3..=10).map(|v| packing_max(v, 3, SearchLimits::default()).unwrap().max).collect();
    assert!(quads.windows(2).all(|w| w[0] <= w[1]));
    assert!(triples.windows(2).all(|w| w[0] <= w[1]));

    let s13 = packing_max(13, 4, SearchLimits::default()).unwrap();
    s13.witness.validate().unwrap();
    // a Steiner system: every pair covered exactly once
    let covered: usize = s13.witness.blocks.iter().map(|b| b.len() * (b.len() - 1) / 2).sum();
    assert_eq!(covered, 13 * 12 / 2);
    assert_eq!(packing_max(5, 4, SearchLimits::default()).unwrap().max, 1);
}

#[test]
fn packing_limit_is_reported() {
    let r = packing_max(13, 3, SearchLimits::nodes(50)).unwrap();
    assert!(!r.exhaustive);
    r.witness.validate().unwrap();
}

#[test]
fn partial_linear_spaces() {
    let found = |w: WeakCombinatorics| partial_linear_space_exists(&w, SearchLimits::default()).unwrap();
    assert_eq!(found(wc(11, 13, 0, 7)).status, SearchStatus::ExhaustedNone);
    for w in [wc(5, 4, 0, 1), wc(9, 6, 4, 3), wc(13, 12, 4, 9)] {
        let o = found(w.clone());
        assert_eq!(o.status, SearchStatus::WitnessFound, "{w}");
        let Some(Witness::Packing(p)) = o.witness else { panic!("{w}") };
        p.validate_for(&w).unwrap();
    }
    let capped = partial_linear_space_exists(&wc(11, 13, 0, 7), SearchLimits::nodes(3)).unwrap();
    assert_eq!(capped.status, SearchStatus::LimitReached);
    assert!(capped.witness.is_none());
}

/// Plain DFS over all adjacent block reversals, memoized on the full state.
fn brute_wiring(w: &WeakCombinatorics) -> bool {
    fn go(order: &mut Vec<u8>, rem: [u64; 5], seen: &mut HashSet<(Vec<u8>, [u64; 5])>) -> bool {
        if rem == [0; 5] {
            return order.windows(2).all(|p| p[0] > p[1]);
        }
        if !seen.insert((order.clone(), rem)) {
            return false;
        }
        let d = order.len();
        for k in 2..=4usize.min(d) {
            if rem[k] == 0 {
                continue;
            }
            for p in 0..=d - k {
                if order[p..p + k].windows(2).all(|q| q[0] < q[1]) {
                    order[p..p + k].reverse();
                    let mut next = rem;
                    next[k] -= 1;
                    let ok = go(order, next, seen);
                    order[p..p + k].reverse();
                    if ok {
                        return true;
                    }
                }
            }
        }
        false
    }
    let mut order: Vec<u8> = (0..w.d() as u8).collect();
    go(&mut order, [0, 0, w.n(2), w.n(3), w.n(4)], &mut HashSet::new())
}

#[test]
fn wiring_against_brute_force() {
    let mut checked = 0;
    for d in 3..=7u32 {
        let pairs = (d * (d - 1) / 2) as u64;
        for n4 in 0..=pairs / 6 {
            for n3 in 0..=(pairs - 6 * n4) / 3 {
                let n2 = pairs - 6 * n4 - 3 * n3;
                let Ok(w) = WeakCombinatorics::quad(d, n2, n3, n4) else { continue };
                if w.is_pencil() {
                    continue;
                }
                let o = wiring_search(&w, SearchLimits::default()).unwrap();
                assert_ne!(o.status, SearchStatus::LimitReached, "{w}");
                assert_eq!(o.status == SearchStatus::WitnessFound, brute_wiring(&w), "{w}");
                checked += 1;
            }
        }
    }
    assert!(checked > 30);
}

#[test]
fn wiring_examples() {
    for w in [wc(3, 3, 0, 0), wc(5, 4, 0, 1), wc(9, 6, 4, 3)] {
        let o = wiring_search(&w, SearchLimits::default()).unwrap();
        assert_eq!(o.status, SearchStatus::WitnessFound, "{w}");
        let Some(Witness::Wiring(diagram)) = o.witness else { panic!("{w}") };
        diagram.validate_for(&w).unwrap();
    }
    let o = wiring_search(&wc(7, 6, 1, 2), SearchLimits::default()).unwrap();
    assert_eq!(o.status, SearchStatus::ExhaustedNone);
    let capped = wiring_search(&wc(9, 9, 1, 4), SearchLimits::nodes(100)).unwrap();
    assert_eq!(capped.status, SearchStatus::LimitReached);
    assert!(wiring_search(&wc(17, 22, 0, 19), SearchLimits::default()).is_err());
}

#[test]
fn wiring_witnesses_obey_the_pseudoline_bounds() {
    let rows = enumerate(3, 10, &FilterConfig::paper_table()).unwrap().rows;
    let mut outcomes = HashMap::new();
    for r in &rows {
        let o = wiring_search(&r.wc, SearchLimits::default()).unwrap();
        assert_ne!(o.status, SearchStatus::LimitReached, "{}", r.wc);
        if o.status == SearchStatus::WitnessFound {
            assert!(melchior(&r.wc).passes(), "{}", r.wc);
            assert!(!shnurnikov(&r.wc, ShnurnikovConstant::Strict9).fails(), "{}", r.wc);
            let p = partial_linear_space_exists(&r.wc, SearchLimits::default()).unwrap();
            assert_eq!(p.status, SearchStatus::WitnessFound, "{}", r.wc);
            let Some(Witness::Wiring(diagram)) = &o.witness else { panic!() };
            // the crossing blocks of a wiring diagram form a partial linear space
            let blocks = diagram.crossing_blocks();
            let pls = arrangements::realizability::PartialLinearSpace {
                ground_size: r.wc.d(),
                blocks,
            };
            pls.validate_for(&r.wc).unwrap();
        }
        outcomes.insert(r.wc.clone(), o.status);
    }
    // repeat runs agree
    for r in rows.iter().take(12) {
        let again = wiring_search(&r.wc, SearchLimits::default()).unwrap();
        assert_eq!(outcomes[&r.wc], again.status);
    }
}

fn line() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-3i64..=3).prop_filter("nonzero", |l| l.iter().any(|&c| c != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Real arrangements are pseudoline arrangements: every quadruple-bounded
    /// one must be found by both searches and obey the real bounds.
    #[test]
    fn real_arrangements_are_found(lines in prop::collection::vec(line(), 3..=8)) {
        let Ok(arr) = RationalArrangement::from_integers(&lines) else { return Ok(()) };
        let w = intersection_summary(&arr).weak_combinatorics;
        prop_assume!(w.is_quadruple_bounded() && !w.is_pencil() && w.d() >= 3);
        let o = wiring_search(&w, SearchLimits::default()).unwrap();
        prop_assert_eq!(o.status, SearchStatus::WitnessFound, "{}", w);
        let p = partial_linear_space_exists(&w, SearchLimits::default()).unwrap();
        prop_assert_eq!(p.status, SearchStatus::WitnessFound, "{}", w);
        prop_assert!(melchior(&w).passes(), "{}", w);
        prop_assert!(!shnurnikov(&w, ShnurnikovConstant::Strict9).fails(), "{}", w);
    }
}
