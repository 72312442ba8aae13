use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use subcentrality::centrality::{CentralityContext, Route};
use subcentrality::enumeration::{
    centrality_distribution, connected_subsets, simple_cycles, simple_paths, DistributionConfig,
};
use subcentrality::generators::{self, rng};
use subcentrality::group::{group_betweenness, group_closeness, group_degree, Geodesics};
use subcentrality::hikes::{
    enumerate_hikes, error_term_amplitude, mobius_det_identity_check, normalized_hike_counts,
    sieve_count_bruteforce, sieve_count_formula, walk_factorization_check, Hike, PrimeTable,
};
use subcentrality::linalg::{char_poly, series::product_coefficient, zeta_coefficients, Spectrum};
use subcentrality::{load_edge_list, Graph, VertexSubset};

fn subset_from_mask(mask: u32, n: usize) -> VertexSubset {
    VertexSubset::new((0..n).filter(|&v| mask & (1 << v) != 0), n).unwrap()
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let n = g.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = g.weight(i, j);
            if w != 0.0 && (g.is_directed() || i <= j) {
                edges.push((perm[i], perm[j], w));
            }
        }
    }
    Graph::from_edges(n, g.is_directed(), &edges).unwrap()
}

fn aperiodic_digraph(seed: u64, n: usize, p: f64) -> Option<(Graph, Spectrum)> {
    let g = generators::random_strongly_connected(n, p, &mut rng(seed));
    let s = Spectrum::compute(&g).ok()?;
    (s.multiplicity == 1 && s.eta.is_some()).then_some((g, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn deletion_matches_induced_complement(seed in any::<u64>(), n in 1usize..9, mask in any::<u32>()) {
        let g = generators::erdos_renyi(n, 0.5, true, &mut rng(seed));
        let h = subset_from_mask(mask & ((1 << n) - 1), n);
        let a = g.delete_vertices(&h).unwrap();
        let b = g.induced_subgraph(&h.complement(n)).unwrap();
        prop_assert_eq!(a.adjacency(), b.adjacency());
        prop_assert_eq!(a.labels(), b.labels());
    }

    #[test]
    fn edge_list_round_trip(seed in any::<u64>(), n in 2usize..10, directed in any::<bool>()) {
        let mut r = rng(seed);
        let mut text = String::new();
        let mut seen = BTreeSet::new();
        for _ in 0..(2 * n) {
            let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
            let key = if directed { (a, b) } else { (a.min(b), a.max(b)) };
            if !seen.insert(key) {
                continue;
            }
            let mantissa: u64 = r.gen_range(1..1_000_000_000_000_000);
            let exp = r.gen_range(0..10);
            let w = format!("{}", mantissa as f64 / 10f64.powi(exp));
            text += &format!("v{a},v{b},{w}\n");
        }
        let g = load_edge_list(&text, directed).unwrap();
        let again = load_edge_list(&g.to_edge_list(), directed).unwrap();
        let mut a: Vec<_> = g.labels().to_vec();
        let mut b: Vec<_> = again.labels().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        for i in 0..g.n() {
            for j in 0..g.n() {
                let (x, y) = (again.index_of(g.label(i)).unwrap(), again.index_of(g.label(j)).unwrap());
                prop_assert_eq!(g.weight(i, j).to_bits(), again.weight(x, y).to_bits());
            }
        }
    }

    #[test]
    fn char_poly_vanishes_at_inverse_root(seed in any::<u64>(), n in 2usize..12, weighted in any::<bool>()) {
        let g = generators::random_connected(n, 0.4, weighted, &mut rng(seed));
        let s = Spectrum::compute(&g).unwrap();
        prop_assert!(s.char_poly.eval(1.0 / s.lambda).abs() <= 1e-9);
        let ctx = CentralityContext::with_spectrum(&g, s);
        prop_assert!(ctx.value(&[]).abs() <= 1e-9);
    }

    #[test]
    fn zeta_inverts_char_poly(seed in any::<u64>(), n in 1usize..9, order in 0usize..25) {
        let g = generators::random_strongly_connected(n, 0.4, &mut rng(seed));
        let cp = char_poly(&g);
        let z = zeta_coefficients(&g, order);
        let (cp, z) = (cp.exact().unwrap(), z.exact().unwrap());
        for k in 0..=order {
            let expect = if k == 0 { BigInt::one() } else { BigInt::zero() };
            prop_assert_eq!(product_coefficient(cp, z, k), expect);
            prop_assert!(z[k] >= BigInt::zero());
        }
    }

    #[test]
    fn centrality_bounds_and_monotonicity(seed in any::<u64>(), n in 2usize..9) {
        let g = generators::erdos_renyi(n, 0.5, true, &mut rng(seed));
        let Ok(ctx) = CentralityContext::new(&g) else { return Ok(()); };
        let full = (1u32 << n) - 1;
        for mask in 1..=full {
            let h: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let c = ctx.value(&h);
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&c), "c({:?}) = {}", h, c);
            for v in 0..n {
                if mask & (1 << v) == 0 {
                    let bigger: Vec<usize> = (0..n).filter(|&u| (mask | (1 << v)) & (1 << u) != 0).collect();
                    prop_assert!(c <= ctx.value(&bigger) + 1e-12);
                }
            }
        }
        prop_assert_eq!(ctx.value(&(0..n).collect::<Vec<_>>()), 1.0);
    }

    #[test]
    fn singleton_centrality_is_scaled_eigenvector(seed in any::<u64>(), n in 2usize..12, weighted in any::<bool>()) {
        let g = generators::random_connected(n, 0.3, weighted, &mut rng(seed));
        let ctx = CentralityContext::new(&g).unwrap();
        let eta = ctx.eta().unwrap();
        let v = ctx.eigenvector_centrality().unwrap();
        let c: Vec<f64> = (0..n).map(|i| ctx.value(&[i])).collect();
        for i in 0..n {
            prop_assert!((c[i] - eta * v[i] * v[i]).abs() <= 1e-9);
        }
        for i in 0..n {
            for j in 0..n {
                if v[i] > v[j] + 1e-9 {
                    prop_assert!(c[i] > c[j] - 1e-9);
                }
            }
        }
    }

    #[test]
    fn projector_relation(seed in any::<u64>(), n in 2usize..8, weighted in any::<bool>()) {
        let g = generators::random_connected(n, 0.4, weighted, &mut rng(seed));
        let ctx = CentralityContext::new(&g).unwrap();
        for i in 0..n {
            for j in 0..n {
                let lhs = ctx.projector_pathsum(i, j, n).unwrap();
                prop_assert!((lhs - ctx.projector_entry(i, j).unwrap()).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn bordered_route_agrees(seed in any::<u64>(), n in 3usize..11, weighted in any::<bool>()) {
        let g = generators::random_connected(n, 0.4, weighted, &mut rng(seed));
        let ctx = CentralityContext::new(&g).unwrap().with_bordered_route();
        prop_assert!(ctx.has_bordered_route());
        for mask in 0u32..(1 << n) {
            let h: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let d = ctx.value_by(&h, Route::Direct);
            let b = ctx.value_by(&h, Route::Bordered);
            prop_assert!((d - b).abs() <= 1e-9, "{:?}: {} vs {}", h, d, b);
        }
    }

    #[test]
    fn group_degree_by_set_expansion(seed in any::<u64>(), n in 1usize..12, mask in any::<u32>()) {
        let g = generators::erdos_renyi(n, 0.3, false, &mut rng(seed));
        let h = subset_from_mask(mask & ((1 << n) - 1), n);
        let mut nbrs = BTreeSet::new();
        for &m in h.members() {
            for u in 0..n {
                if g.has_arc(m, u) || g.has_arc(u, m) {
                    nbrs.insert(u);
                }
            }
        }
        let expect = nbrs.iter().filter(|u| !h.contains(**u)).count();
        prop_assert_eq!(group_degree(&g, &h), expect);
    }

    #[test]
    fn betweenness_of_all_but_a_pair(seed in any::<u64>(), n in 3usize..10) {
        let g = generators::erdos_renyi(n, 0.4, false, &mut rng(seed));
        let geo = Geodesics::new(&g);
        for u in 0..n {
            for v in (u + 1)..n {
                let h = VertexSubset::new((0..n).filter(|&x| x != u && x != v), n).unwrap();
                let expect = match geo.distance(u, v) {
                    Some(d) if d >= 2 => 1.0,
                    _ => 0.0,
                };
                prop_assert_eq!(group_betweenness(&g, &h), expect);
            }
        }
    }

    #[test]
    fn group_measures_survive_relabeling(seed in any::<u64>(), n in 2usize..9, mask in any::<u32>()) {
        let mut r = rng(seed);
        let g = generators::erdos_renyi(n, 0.4, false, &mut r);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let pg = permuted(&g, &perm);
        let bits = mask & ((1 << n) - 1);
        let h = subset_from_mask(bits, n);
        let ph = VertexSubset::new(h.members().iter().map(|&v| perm[v]), n).unwrap();
        prop_assert_eq!(group_degree(&g, &h), group_degree(&pg, &ph));
        prop_assert_eq!(group_closeness(&g, &h), group_closeness(&pg, &ph));
        prop_assert!((group_betweenness(&g, &h) - group_betweenness(&pg, &ph)).abs() < 1e-12);
    }

    #[test]
    fn paths_are_finite_and_simple(seed in any::<u64>(), n in 1usize..8) {
        let g = generators::erdos_renyi(n, 0.5, false, &mut rng(seed));
        for i in 0..n {
            for j in 0..n {
                for p in simple_paths(&g, i, j) {
                    prop_assert!(p.vertices.len() <= n);
                    let set: BTreeSet<_> = p.vertices.iter().collect();
                    prop_assert_eq!(set.len(), p.vertices.len());
                }
            }
        }
    }

    #[test]
    fn mobius_sum_reproduces_char_poly(seed in any::<u64>(), n in 1usize..7) {
        let g = generators::random_strongly_connected(n, 0.4, &mut rng(seed));
        prop_assert!(mobius_det_identity_check(&g, n).unwrap().holds);
    }

    #[test]
    fn sieve_and_walk_factorization(seed in any::<u64>(), n in 2usize..5) {
        let g = generators::random_strongly_connected(n, 0.3, &mut rng(seed));
        let e = enumerate_hikes(&g, 7).unwrap();
        for gamma in e.table.primes() {
            for l in 0..=7 {
                prop_assert_eq!(
                    sieve_count_bruteforce(&e, gamma, l).unwrap(),
                    sieve_count_formula(&g, gamma, l).unwrap()
                );
            }
            for k in 0..=7 {
                prop_assert!(walk_factorization_check(&e, gamma, k).unwrap());
            }
        }
    }

    #[test]
    fn normal_form_ignores_legal_shuffles(seed in any::<u64>(), len in 0usize..8) {
        let g = generators::cycle(6);
        let t = PrimeTable::new(&g, 6);
        let mut r = rng(seed);
        let word: Vec<u32> = (0..len).map(|_| r.gen_range(0..t.len() as u32)).collect();
        let canonical = t.normalize(&word);
        for _ in 0..2 {
            let mut w = word.clone();
            for _ in 0..20 {
                if w.len() < 2 {
                    break;
                }
                let i = r.gen_range(0..w.len() - 1);
                if t.commutes(w[i], w[i + 1]) {
                    w.swap(i, i + 1);
                }
            }
            prop_assert_eq!(&t.normalize(&w), &canonical);
        }
        prop_assert!(t.is_normal(canonical.word()));
    }

    #[test]
    fn hike_multiplicativity(seed in any::<u64>()) {
        let g = generators::cycle(6);
        let t = PrimeTable::new(&g, 6);
        let mut r = rng(seed);
        // letters on the arc {0,1,2} and on {3,4,5} never meet
        let left: Vec<u32> = (0..t.len() as u32).filter(|&a| t.prime(a).vertex_set().members().iter().all(|&v| v < 3)).collect();
        let right: Vec<u32> = (0..t.len() as u32).filter(|&a| t.prime(a).vertex_set().members().iter().all(|&v| v >= 3)).collect();
        let pick = |r: &mut rand_chacha::ChaCha8Rng, from: &[u32]| -> Hike {
            let k = r.gen_range(0..3);
            t.normalize(&(0..k).map(|_| from[r.gen_range(0..from.len())]).collect::<Vec<_>>())
        };
        let h1 = pick(&mut r, &left);
        let h2 = pick(&mut r, &right);
        let prod = t.concat(&h1, &h2);
        prop_assert_eq!(prod.length(), h1.length() + h2.length());
        prop_assert_eq!(t.mobius(&prod), t.mobius(&h1) * t.mobius(&h2));
        prop_assert_eq!(&prod, &t.concat(&h2, &h1));
    }

    #[test]
    fn distribution_is_deterministic(seed in any::<u64>(), n in 4usize..14, k in 1usize..4) {
        let g = generators::random_connected(n, 0.3, false, &mut rng(seed));
        let one = centrality_distribution(&g, &DistributionConfig::new(k)).unwrap();
        let three = centrality_distribution(&g, &DistributionConfig { workers: 3, ..DistributionConfig::new(k) }).unwrap();
        prop_assert_eq!(one, three);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cycles_match_brute_force(seed in any::<u64>(), n in 1usize..7, p in 0.1f64..0.7) {
        let mut r = rng(seed);
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if r.gen_bool(p) {
                    arcs.push((i, j));
                }
            }
        }
        let g = Graph::from_unit_edges(n, true, &arcs).unwrap();
        let got: BTreeSet<Vec<usize>> = simple_cycles(&g, n).iter().map(|c| c.vertices().to_vec()).collect();
        prop_assert_eq!(got, brute_cycles(&g));
    }

    #[test]
    fn subsets_match_brute_force(seed in any::<u64>(), n in 1usize..12, k in 1usize..5) {
        let g = generators::erdos_renyi(n, 0.3, false, &mut rng(seed));
        let got: Vec<VertexSubset> = connected_subsets(&g, k);
        let set: BTreeSet<_> = got.iter().cloned().collect();
        prop_assert_eq!(set.len(), got.len());
        let mut expect = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k {
                let h = subset_from_mask(mask, n);
                if g.is_connected(&h).unwrap() {
                    expect.insert(h);
                }
            }
        }
        prop_assert_eq!(set, expect);
    }

    #[test]
    fn hike_counts_oscillate_less(seed in any::<u64>(), n in 3usize..6) {
        let Some((g, s)) = aperiodic_digraph(seed, n, 0.5) else { return Ok(()); };
        let f = normalized_hike_counts(&g, 60).unwrap();
        let step = |l: usize| (f[l] - f[l - 1]).abs();
        let amp = |l: usize| (l..=60).map(step).fold(0.0, f64::max);
        for l in 21..=60 {
            prop_assert!(amp(l) <= amp(l - 1));
        }
        prop_assert!(amp(60) <= 0.1 * amp(20) || amp(20) < 1e-12);
        prop_assert!((f[60] - 1.0 / s.eta.unwrap()).abs() <= 1e-3 * f[60]);

        let t = PrimeTable::new(&g, n);
        let a10 = error_term_amplitude(&g, &t, 10).unwrap();
        let a50 = error_term_amplitude(&g, &t, 50).unwrap();
        prop_assert!(a50 * 10.0 <= a10 || a10 < 1e-12, "{} -> {}", a10, a50);
    }
}

/// Every vertex-distinct closed sequence, rotated to start at its minimum.
fn brute_cycles(g: &Graph) -> BTreeSet<Vec<usize>> {
    fn grow(g: &Graph, seq: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let last = *seq.last().unwrap();
        if g.has_arc(last, seq[0]) {
            let start = (0..seq.len()).min_by_key(|&i| seq[i]).unwrap();
            let mut rot = seq[start..].to_vec();
            rot.extend_from_slice(&seq[..start]);
            out.insert(rot);
        }
        for v in 0..g.n() {
            if !seq.contains(&v) && g.has_arc(last, v) {
                seq.push(v);
                grow(g, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..g.n() {
        grow(g, &mut vec![s], &mut out);
    }
    out
}
