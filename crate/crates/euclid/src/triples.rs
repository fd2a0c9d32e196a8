//! Permutation triples, passports and the preprocessing step that moves a
//! vertex of maximal rotation to the point 1.
//!
//! Permutations act on the right: `x^σ = σ.image(x)`. Internally points are
//! `0..d`; the text format and [`Permutation::from_images`] use `1..=d`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::triangle::{self, Side};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation { img: (0..d).collect() }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_zero_based(img: Vec<usize>) -> Result<Self> {
        let d = img.len();
        let mut seen = vec![false; d];
        for &x in &img {
            if x >= d || seen[x] {
                return Err(Error::Parse("images are not a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(Permutation { img })
    }

    /// Builds from 1-based images.
    pub fn from_images(img: &[usize]) -> Result<Self> {
        if img.contains(&0) {
            return Err(Error::Parse("images are 1-based".into()));
        }
        Self::from_zero_based(img.iter().map(|x| x - 1).collect())
    }

    /// Builds from 1-based cycles on `d` points.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut img: Vec<usize> = (0..d).collect();
        let mut used = vec![false; d];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x == 0 || x > d {
                    return Err(Error::Parse(format!("point {x} outside 1..={d}")));
                }
                if used[x - 1] {
                    return Err(Error::Parse(format!("point {x} repeated")));
                }
                used[x - 1] = true;
                img[x - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Ok(Permutation { img })
    }

    /// Parses `"(2,4,3)(1,5)"`, `"(2 4 3)"` or `"id"` on `d` points.
    pub fn parse(s: &str, d: usize) -> Result<Self> {
        Self::from_cycles(d, &parse_cycles(s)?)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// 0-based image of a 0-based point.
    pub fn image(&self, x: usize) -> usize {
        self.img[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            img: self.img.iter().map(|&x| other.img[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut img = vec![0; self.img.len()];
        for (x, &y) in self.img.iter().enumerate() {
            img[y] = x;
        }
        Permutation { img }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycles (0-based), fixed points included, each starting at its least
    /// element, sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.img[s];
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.img[x];
            }
            out.push(cyc);
        }
        out
    }

    /// The cycle through a 0-based point.
    pub fn cycle_of(&self, x: usize) -> Vec<usize> {
        let mut cyc = vec![x];
        let mut y = self.img[x];
        while y != x {
            cyc.push(y);
            y = self.img[y];
        }
        cyc
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u32 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64)) as u32
    }

    /// Number of cycles, k(σ).
    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Relabels every point through `tau`: the result maps `tau(x)` to
    /// `tau(self(x))`, i.e. `tau⁻¹ σ tau` in right-action notation.
    pub fn conjugate(&self, tau: &Permutation) -> Result<Permutation> {
        if tau.degree() != self.degree() {
            return Err(Error::DegreeMismatch);
        }
        let mut img = vec![0; self.degree()];
        for (x, &y) in self.img.iter().enumerate() {
            img[tau.img[x]] = tau.img[y];
        }
        Ok(Permutation { img })
    }

    pub fn transposition(d: usize, i: usize, j: usize) -> Permutation {
        let mut p = Permutation::identity(d);
        p.img.swap(i, j);
        p
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Parses cycle notation into 1-based cycles.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let t = s.trim();
    if t.is_empty() || t == "id" || t == "()" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let body = &open[..close];
        let mut cyc = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad entry {tok:?} in {s:?}")))?;
            cyc.push(v);
        }
        if !cyc.is_empty() {
            out.push(cyc);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(out)
}

/// One of the three Euclidean signatures, in the required written order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    C333,
    C236,
    C244,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::C333, Case::C236, Case::C244];

    pub fn orders(self) -> (u32, u32, u32) {
        match self {
            Case::C333 => (3, 3, 3),
            Case::C236 => (2, 3, 6),
            Case::C244 => (2, 4, 4),
        }
    }

    pub fn from_orders(o: (u32, u32, u32)) -> Result<Case> {
        for c in Case::ALL {
            if c.orders() == o {
                return Ok(c);
            }
        }
        let mut sorted = [o.0, o.1, o.2];
        sorted.sort_unstable();
        for c in Case::ALL {
            let (a, b, cc) = c.orders();
            if sorted == [a, b, cc] {
                return Err(Error::NeedsRelabel { found: o, required: c.orders() });
            }
        }
        Err(Error::NotEuclidean(o))
    }

    pub fn side_order(self, s: Side) -> u32 {
        let (a, b, c) = self.orders();
        match s {
            Side::A => a,
            Side::B => b,
            Side::C => c,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.orders();
        write!(f, "({a},{b},{c})")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PermutationTriple {
    pub sigma_a: Permutation,
    pub sigma_b: Permutation,
    pub sigma_c: Permutation,
    pub degree: usize,
}

impl PermutationTriple {
    /// Builds and validates.
    pub fn new(a: Permutation, b: Permutation, c: Permutation) -> Result<Self> {
        let t = Self::new_unchecked(a, b, c)?;
        validate(&t)?;
        Ok(t)
    }

    /// Checks only that the degrees agree.
    pub fn new_unchecked(a: Permutation, b: Permutation, c: Permutation) -> Result<Self> {
        let d = a.degree();
        if b.degree() != d || c.degree() != d {
            return Err(Error::DegreeMismatch);
        }
        Ok(PermutationTriple { sigma_a: a, sigma_b: b, sigma_c: c, degree: d })
    }

    /// Parses three cycle strings on `d` points.
    pub fn parse(a: &str, b: &str, c: &str, d: usize) -> Result<Self> {
        Self::new_unchecked(
            Permutation::parse(a, d)?,
            Permutation::parse(b, d)?,
            Permutation::parse(c, d)?,
        )
    }

    /// Inverts each permutation. A triple whose product is the identity when
    /// σ_c is applied first becomes one whose product is the identity when
    /// σ_a is applied first.
    pub fn inverted(&self) -> Self {
        PermutationTriple {
            sigma_a: self.sigma_a.inverse(),
            sigma_b: self.sigma_b.inverse(),
            sigma_c: self.sigma_c.inverse(),
            degree: self.degree,
        }
    }

    pub fn side(&self, s: Side) -> &Permutation {
        match s {
            Side::A => &self.sigma_a,
            Side::B => &self.sigma_b,
            Side::C => &self.sigma_c,
        }
    }

    pub fn sides(&self) -> [&Permutation; 3] {
        [&self.sigma_a, &self.sigma_b, &self.sigma_c]
    }
}

impl fmt::Display for PermutationTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}; {}] d={}", self.sigma_a, self.sigma_b, self.sigma_c, self.degree)
    }
}

pub fn is_transitive(perms: &[&Permutation], d: usize) -> bool {
    if d == 0 {
        return true;
    }
    let mut seen = vec![false; d];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = queue.pop_front() {
        for p in perms {
            let y = p.image(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    count == d
}

/// Checks the product relation and transitivity; returns the triple.
pub fn validate(t: &PermutationTriple) -> Result<&PermutationTriple> {
    let d = t.degree;
    if t.sides().iter().any(|p| p.degree() != d) {
        return Err(Error::DegreeMismatch);
    }
    if !t.sigma_a.then(&t.sigma_b).then(&t.sigma_c).is_identity() {
        return Err(Error::RelationViolated);
    }
    if !is_transitive(&t.sides(), d) {
        return Err(Error::NotTransitive);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Passport {
    pub case: Case,
    /// Actual element orders of σ_a, σ_b, σ_c.
    pub orders: (u32, u32, u32),
    pub cycle_types: [Vec<usize>; 3],
    pub genus: i64,
}

fn genus_of(t: &PermutationTriple) -> i64 {
    let d = t.degree as i64;
    let e: i64 = t.sides().iter().map(|p| d - p.num_cycles() as i64).sum();
    1 - d + e / 2
}

fn actual_orders(t: &PermutationTriple) -> (u32, u32, u32) {
    (t.sigma_a.order(), t.sigma_b.order(), t.sigma_c.order())
}

/// Passport with the Euclidean case read off the actual orders.
pub fn passport(t: &PermutationTriple) -> Result<Passport> {
    let orders = actual_orders(t);
    let case = Case::from_orders(orders)?;
    Ok(build_passport(t, case, orders))
}

/// Passport for a declared case: each σ_s must have order dividing s.
/// This admits triples such as the degree-1 identity.
pub fn passport_as(t: &PermutationTriple, case: Case) -> Result<Passport> {
    let orders = actual_orders(t);
    let (a, b, c) = case.orders();
    if a % orders.0 != 0 || b % orders.1 != 0 || c % orders.2 != 0 {
        return Err(Error::NotEuclidean(orders));
    }
    Ok(build_passport(t, case, orders))
}

/// Declared case if given, otherwise inferred.
pub fn euclidean_case(t: &PermutationTriple, declared: Option<Case>) -> Result<Passport> {
    match declared {
        Some(c) => passport_as(t, c),
        None => passport(t),
    }
}

fn build_passport(t: &PermutationTriple, case: Case, orders: (u32, u32, u32)) -> Passport {
    Passport {
        case,
        orders,
        cycle_types: [
            t.sigma_a.cycle_type(),
            t.sigma_b.cycle_type(),
            t.sigma_c.cycle_type(),
        ],
        genus: genus_of(t),
    }
}

/// Simultaneous conjugation by `tau`.
pub fn conjugate(t: &PermutationTriple, tau: &Permutation) -> Result<PermutationTriple> {
    PermutationTriple::new_unchecked(
        t.sigma_a.conjugate(tau)?,
        t.sigma_b.conjugate(tau)?,
        t.sigma_c.conjugate(tau)?,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preprocessed {
    pub triple: PermutationTriple,
    pub rotation_index: u32,
    pub side: Side,
    pub conjugator: Permutation,
}

/// Conjugates so that 1 lies in a cycle of σ_s of length s/r. Sides are
/// tried in the order c, b, a.
pub fn preprocess(t: &PermutationTriple, case: Case) -> Result<Preprocessed> {
    let ctx = triangle::context(case);
    let basis = triangle::translation_basis(t, &ctx)?;
    let r = triangle::rotation_index(&basis, t.degree, case.orders().2)?;
    for side in [Side::C, Side::B, Side::A] {
        let s = case.side_order(side);
        if !s.is_multiple_of(r) {
            continue;
        }
        let want = (s / r) as usize;
        let sigma = t.side(side);
        if sigma.cycle_of(0).len() == want {
            return Ok(Preprocessed {
                triple: t.clone(),
                rotation_index: r,
                side,
                conjugator: Permutation::identity(t.degree),
            });
        }
        if let Some(cyc) = sigma.cycles().into_iter().find(|c| c.len() == want) {
            let tau = Permutation::transposition(t.degree, 0, cyc[0]);
            return Ok(Preprocessed {
                triple: conjugate(t, &tau)?,
                rotation_index: r,
                side,
                conjugator: tau,
            });
        }
    }
    Err(Error::InternalInconsistency(format!(
        "no cycle of length s/{r} in any side"
    )))
}

/// Canonical representative under simultaneous conjugation: relabel by
/// breadth-first search from every start point and keep the least result.
pub fn canonical_form(t: &PermutationTriple) -> PermutationTriple {
    let d = t.degree;
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for start in 0..d {
        let mut label = vec![usize::MAX; d];
        let mut order = Vec::with_capacity(d);
        label[start] = 0;
        order.push(start);
        let mut k = 0;
        while k < order.len() {
            let x = order[k];
            k += 1;
            for p in [&t.sigma_a, &t.sigma_b] {
                let y = p.image(x);
                if label[y] == usize::MAX {
                    label[y] = order.len();
                    order.push(y);
                }
            }
        }
        if order.len() < d {
            // not transitive: fall back to the triple itself
            return t.clone();
        }
        let a: Vec<usize> = order.iter().map(|&x| label[t.sigma_a.image(x)]).collect();
        let b: Vec<usize> = order.iter().map(|&x| label[t.sigma_b.image(x)]).collect();
        let cand = (a, b);
        if best.as_ref().is_none_or(|bst| cand < *bst) {
            best = Some(cand);
        }
    }
    let (a, b) = best.unwrap_or_default();
    let sa = Permutation { img: a };
    let sb = Permutation { img: b };
    let sc = sa.then(&sb).inverse();
    PermutationTriple { sigma_a: sa, sigma_b: sb, sigma_c: sc, degree: d }
}

/// All partitions of `d` into parts dividing `s`, in decreasing order.
fn partitions_dividing(d: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            if s.is_multiple_of(p) {
                cur.push(p);
                rec(rem - p, p, s, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(d, d, s, &mut Vec::new(), &mut out);
    out
}

fn from_type(d: usize, parts: &[usize]) -> Permutation {
    let mut img: Vec<usize> = (0..d).collect();
    let mut start = 0;
    for &p in parts {
        for k in 0..p {
            img[start + k] = start + (k + 1) % p;
        }
        start += p;
    }
    Permutation { img }
}

/// Every permutation of `0..d` whose order divides `s`.
fn elements_of_order_dividing(d: usize, s: usize) -> Vec<Permutation> {
    fn rec(
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        d: usize,
        s: usize,
        out: &mut Vec<Permutation>,
    ) {
        let Some(first) = (0..d).find(|&x| !used[x]) else {
            out.push(Permutation { img: img.clone() });
            return;
        };
        // build the cycle through `first` of every admissible length
        fn grow(
            cyc: &mut Vec<usize>,
            img: &mut Vec<usize>,
            used: &mut Vec<bool>,
            d: usize,
            s: usize,
            out: &mut Vec<Permutation>,
        ) {
            let len = cyc.len();
            if s.is_multiple_of(len) {
                for k in 0..len {
                    img[cyc[k]] = cyc[(k + 1) % len];
                }
                rec(img, used, d, s, out);
            }
            if len < s {
                for y in 0..d {
                    if !used[y] && y > cyc[0] {
                        used[y] = true;
                        cyc.push(y);
                        grow(cyc, img, used, d, s, out);
                        cyc.pop();
                        used[y] = false;
                    }
                }
            }
        }
        used[first] = true;
        let mut cyc = vec![first];
        grow(&mut cyc, img, used, d, s, out);
        used[first] = false;
    }
    let mut out = Vec::new();
    let mut img: Vec<usize> = (0..d).collect();
    let mut used = vec![false; d];
    rec(&mut img, &mut used, d, s, &mut out);
    out
}

/// One representative per conjugacy class of transitive triples of degree
/// `d` with ord σ_s dividing s, in canonical form and sorted.
pub fn enumerate_triples(d: usize, case: Case) -> Vec<PermutationTriple> {
    if d == 0 {
        return Vec::new();
    }
    let (a, b, c) = case.orders();
    let bs = elements_of_order_dividing(d, b as usize);
    let mut seen: HashSet<PermutationTriple> = HashSet::new();
    for parts in partitions_dividing(d, a as usize) {
        let sa = from_type(d, &parts);
        for sb in &bs {
            let sc = sa.then(sb).inverse();
            if c % sc.order() != 0 {
                continue;
            }
            if !is_transitive(&[&sa, sb], d) {
                continue;
            }
            let t = PermutationTriple {
                sigma_a: sa.clone(),
                sigma_b: sb.clone(),
                sigma_c: sc,
                degree: d,
            };
            seen.insert(canonical_form(&t));
        }
    }
    let set: BTreeSet<PermutationTriple> = seen.into_iter().collect();
    set.into_iter().collect()
}
