use std::collections::BTreeSet;

use euclid_belyi::triples::{enumerate_triples, Case, PermutationTriple};

type P = Vec<usize>;

fn all_perms(d: usize) -> Vec<P> {
    let mut out = Vec::new();
    let mut p: P = (0..d).collect();
    fn rec(k: usize, p: &mut P, out: &mut Vec<P>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn order(p: &P) -> usize {
    let id: P = (0..p.len()).collect();
    let mut q = p.clone();
    let mut k = 1;
    while q != id {
        q = q.iter().map(|&x| p[x]).collect();
        k += 1;
    }
    k
}

fn inverse(p: &P) -> P {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

fn transitive(ps: &[&P], d: usize) -> bool {
    let mut seen = vec![false; d];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for p in ps {
            if !seen[p[x]] {
                seen[p[x]] = true;
                stack.push(p[x]);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// τ σ τ⁻¹ as image vectors.
fn conj(p: &P, tau: &P) -> P {
    let mut q = vec![0; p.len()];
    for i in 0..p.len() {
        q[tau[i]] = tau[p[i]];
    }
    q
}

fn key(t: &PermutationTriple) -> (P, P, P) {
    let v = |s: &euclid_belyi::triples::Permutation| s.images().to_vec();
    let [a, b, c] = t.sides();
    (v(a), v(b), v(c))
}

/// Conjugacy classes of transitive triples with ord σ_s | s, by brute force.
fn brute_classes(d: usize, case: Case) -> usize {
    let (oa, ob, oc) = case.orders();
    let perms = all_perms(d);
    let mut seen: BTreeSet<(P, P, P)> = BTreeSet::new();
    let mut classes = 0;
    for a in perms.iter().filter(|p| (oa as usize).is_multiple_of(order(p))) {
        for b in perms.iter().filter(|p| (ob as usize).is_multiple_of(order(p))) {
            // a, then b, then c is the identity
            let ab: P = (0..d).map(|x| b[a[x]]).collect();
            let c = inverse(&ab);
            if !(oc as usize).is_multiple_of(order(&c)) || !transitive(&[a, b, &c], d) {
                continue;
            }
            if seen.contains(&(a.clone(), b.clone(), c.clone())) {
                continue;
            }
            classes += 1;
            for tau in &perms {
                seen.insert((conj(a, tau), conj(b, tau), conj(&c, tau)));
            }
        }
    }
    classes
}

#[test]
fn counts_match_brute_force() {
    for case in Case::ALL {
        for d in 1..=5 {
            assert_eq!(enumerate_triples(d, case).len(), brute_classes(d, case), "{case:?} d = {d}");
        }
    }
}

#[test]
fn representatives_are_pairwise_non_conjugate() {
    let perms = all_perms(6);
    for case in Case::ALL {
        let reps = enumerate_triples(6, case);
        let mut orbits: BTreeSet<(P, P, P)> = BTreeSet::new();
        for t in &reps {
            let (a, b, c) = key(t);
            assert!(!orbits.contains(&(a.clone(), b.clone(), c.clone())), "{case:?}: {t:?} repeats a class");
            for tau in &perms {
                orbits.insert((conj(&a, tau), conj(&b, tau), conj(&c, tau)));
            }
        }
    }
}
