//! Finite abelian groups in invariant-factor form, Cayley and circulant
//! graphs, lexicographic products and `(l,t)`-cycles.
//!
//! Groups are written additively: an element is a tuple of residues and
//! `x ~ y` in `Cay(G, S)` when `x - y` lies in `S`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::balance::balanced;
use crate::error::{Error, Result};
use crate::graph::{bit, is_isomorphic, write_graph6, Bipartiteness, Graph, MAX_VERTICES};
use crate::matrix::ZeroOneMatrix;
use crate::report::VerificationReport;

/// Default bound on the group order for connection-set enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 24;
/// Largest order accepted by [`verify_main_theorem`].
pub const MAX_THEOREM_ORDER: usize = 32;
/// Largest `n` accepted by [`verify_circulant_lemmas`].
pub const MAX_CIRCULANT_N: usize = 48;

/// `Z_{d1} x ... x Z_{dk}` with `d1 | d2 | ... | dk`, every `di >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianGroup {
    orders: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<usize>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        let describe = || orders.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("x");
        if orders.is_empty() || orders.iter().any(|&d| d < 2) {
            return Err(Error::InvalidGroup(describe()));
        }
        if orders.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(describe()));
        }
        Ok(Self { orders })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    /// One representative per isomorphism class of abelian groups of order
    /// `n`, as invariant-factor chains in lexicographic order of the chains.
    pub fn all_of_order(n: usize) -> Vec<AbelianGroup> {
        fn chains(rest: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 1 {
                if !prefix.is_empty() {
                    out.push(prefix.clone());
                }
                return;
            }
            for d in (min.max(2)..=rest).filter(|d| rest.is_multiple_of(*d) && d % min == 0) {
                // The remaining factors are multiples of d, so d^k must divide rest.
                let quotient = rest / d;
                if quotient != 1 && !quotient.is_multiple_of(d) {
                    continue;
                }
                prefix.push(d);
                chains(quotient, d, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n >= 2 {
            chains(n, 1, &mut Vec::new(), &mut out);
        }
        out.sort();
        out.into_iter().map(|orders| AbelianGroup { orders }).collect()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.orders.len()],
        }
    }

    /// Element with the given coordinates, reduced componentwise.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &d)| c.rem_euclid(d as i64) as usize)
                .collect(),
        })
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if x.coords.len() != self.orders.len() || x.coords.iter().zip(&self.orders).any(|(c, d)| c >= d) {
            Err(Error::GroupMismatch)
        } else {
            Ok(())
        }
    }

    /// Mixed-radix index, first coordinate most significant, so indices
    /// follow lexicographic coordinate order.
    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.check(x)?;
        Ok(x.coords.iter().zip(&self.orders).fold(0, |acc, (c, d)| acc * d + c))
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.orders.len()];
        for (c, d) in coords.iter_mut().zip(&self.orders).rev() {
            *c = index % d;
            index /= d;
        }
        GroupElement { coords }
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.orders)
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
        })
    }

    pub fn negate(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(GroupElement {
            coords: x.coords.iter().zip(&self.orders).map(|(a, d)| (d - a) % d).collect(),
        })
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.add(x, &self.negate(y)?)
    }

    /// The cyclic subgroup `<x>`, listed as `0x, 1x, 2x, ...`.
    pub fn multiples(&self, x: &GroupElement) -> Result<Vec<GroupElement>> {
        self.check(x)?;
        let mut out = vec![self.identity()];
        let mut cur = x.clone();
        while cur != out[0] {
            out.push(cur.clone());
            cur = self.add(&cur, x)?;
        }
        Ok(out)
    }

    pub fn element_order(&self, x: &GroupElement) -> Result<usize> {
        Ok(self.multiples(x)?.len())
    }

    /// Index of `-x` for every element index.
    fn negation_table(&self) -> Vec<usize> {
        (0..self.order())
            .map(|i| {
                let x = self.element_at(i);
                self.index_of(&self.negate(&x).expect("own element"))
                    .expect("own element")
            })
            .collect()
    }

    /// Index of `x - y` for all index pairs, row-major.
    fn difference_table(&self) -> Vec<usize> {
        let n = self.order();
        let elements = self.elements();
        let mut table = vec![0; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                table[i * n + j] = self
                    .index_of(&self.sub(x, y).expect("own elements"))
                    .expect("own elements");
            }
        }
        table
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

/// Invariant factors joined by `x`, e.g. `2x4`.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let orders = s
            .trim()
            .split(['x', 'X'])
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidGroup(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders).map_err(|_| Error::InvalidGroup(s.to_string()))
    }
}

/// Identity-free, inverse-closed subset of a group, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConnectionSet {
    elements: Vec<GroupElement>,
}

impl ConnectionSet {
    pub fn new(group: &AbelianGroup, elements: impl IntoIterator<Item = GroupElement>) -> Result<Self> {
        let set: BTreeSet<GroupElement> = elements.into_iter().collect();
        for x in &set {
            group
                .check(x)
                .map_err(|_| Error::InvalidConnectionSet(format!("{x} is not in {group}")))?;
            if *x == group.identity() {
                return Err(Error::InvalidConnectionSet("contains the identity".into()));
            }
            let inv = group.negate(x)?;
            if !set.contains(&inv) {
                return Err(Error::InvalidConnectionSet(format!(
                    "{x} present but its inverse {inv} is not"
                )));
            }
        }
        Ok(Self {
            elements: set.into_iter().collect(),
        })
    }

    /// Parses comma-separated coordinate tuples such as `(0,1),(1,0)`; for
    /// cyclic groups bare residues like `1,7` are accepted.
    pub fn parse(group: &AbelianGroup, s: &str) -> Result<Self> {
        let rank = group.orders().len();
        let bad = |tok: &str| Error::InvalidConnectionSet(format!("cannot parse element {tok:?}"));
        let mut elements = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let (tok, tail) = if let Some(inner) = rest.strip_prefix('(') {
                let close = inner.find(')').ok_or_else(|| bad(rest))?;
                (&inner[..close], &inner[close + 1..])
            } else {
                match rest.find(',') {
                    Some(i) => (&rest[..i], &rest[i..]),
                    None => (rest, ""),
                }
            };
            let coords = tok
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| bad(tok)))
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != rank {
                return Err(bad(tok));
            }
            elements.push(group.element(&coords)?);
            rest = tail.trim_start().trim_start_matches(',').trim_start();
        }
        Self::new(group, elements)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `Cay(G, S)` with vertices in lexicographic coordinate order; the second
/// component maps vertex ids to group elements.
pub fn cayley_graph(group: &AbelianGroup, set: &ConnectionSet) -> Result<(Graph, Vec<GroupElement>)> {
    let n = group.order();
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    // Re-validate: the set may have been built against another group.
    let set = ConnectionSet::new(group, set.elements.iter().cloned())?;
    let mask = set
        .elements
        .iter()
        .map(|x| group.index_of(x))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0u64, |m, i| m | bit(i));
    Ok((
        cayley_from_mask(group, &group.difference_table(), mask),
        group.elements(),
    ))
}

fn cayley_from_mask(group: &AbelianGroup, diff: &[usize], set_mask: u64) -> Graph {
    let n = group.order();
    let adj = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| set_mask & bit(diff[i * n + j]) != 0)
                .fold(0u64, |m, j| m | bit(j))
        })
        .collect();
    Graph::from_rows_unchecked(adj)
}

/// `Cay(Z_n, exps)`.
pub fn circulant(n: usize, exps: &[usize]) -> Result<Graph> {
    let group = AbelianGroup::cyclic(n)?;
    let elements = exps
        .iter()
        .map(|&e| {
            if e >= n {
                Err(Error::InvalidConnectionSet(format!(
                    "residue {e} is not reduced mod {n}"
                )))
            } else {
                group.element(&[e as i64])
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let set = ConnectionSet::new(&group, elements)?;
    Ok(cayley_graph(&group, &set)?.0)
}

/// A circulant is bipartite exactly when `n` is even and every residue is odd.
pub fn is_bipartite_circulant_predicate(n: usize, exps: &[usize]) -> bool {
    n.is_multiple_of(2) && exps.iter().all(|e| e % 2 == 1)
}

/// `X[Y]`: `(x, y) ~ (x', y')` iff `x ~ x'`, or `x = x'` and `y ~ y'`.
/// Vertex `(x, y)` gets id `x * |Y| + y`.
pub fn lex_product(x: &Graph, y: &Graph) -> Result<Graph> {
    let (nx, ny) = (x.n(), y.n());
    let n = nx * ny;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    let block = crate::graph::low_mask(ny);
    let adj = (0..n)
        .map(|v| {
            let (a, b) = (v / ny, v % ny);
            let across = x.neighbor_iter(a).fold(0u64, |m, a2| m | (block << (a2 * ny)));
            across | (y.neighbors(b) << (a * ny))
        })
        .collect();
    Ok(Graph::from_rows_unchecked(adj))
}

/// Parameters of an `(l,t)`-cycle: `l = 2`, or `l` a multiple of 4 with
/// `l >= 8`; `t >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LtSpec {
    l: usize,
    t: usize,
}

impl LtSpec {
    pub fn new(l: usize, t: usize) -> Result<Self> {
        let l_ok = l == 2 || (l.is_multiple_of(4) && l >= 8);
        if !l_ok || t == 0 {
            return Err(Error::InvalidLtSpec { l, t });
        }
        Ok(Self { l, t })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertices(&self) -> usize {
        self.l * self.t
    }

    pub fn degree(&self) -> usize {
        if self.l == 2 {
            self.t
        } else {
            2 * self.t
        }
    }
}

impl fmt::Display for LtSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.t)
    }
}

/// `C_l[K_t complement]`, with `C_2 = K_2`.
pub fn lt_cycle(spec: LtSpec) -> Result<Graph> {
    let base = if spec.l == 2 {
        Graph::complete(2)?
    } else {
        Graph::cycle(spec.l)?
    };
    lex_product(&base, &Graph::empty(spec.t)?)
}

/// Bipartite adjacency matrix of the `(l,t)`-cycle: row block `x` is cycle
/// position `2x`, column block `y` is position `2y + 1`, each block holding
/// the `t` copies. Works up to 64 rows, past the graph vertex limit.
pub fn lt_cycle_matrix(spec: LtSpec) -> Result<ZeroOneMatrix> {
    let half = spec.l / 2;
    let t = spec.t;
    let mut a = ZeroOneMatrix::zeros(half * t, half * t)?;
    for x in 0..half {
        for y in [x, (x + half - 1) % half] {
            for i in 0..t {
                for j in 0..t {
                    a.set(x * t + i, y * t + j, true);
                }
            }
        }
    }
    Ok(a)
}

/// Recognizes `(l,t)`-cycles. Complete bipartite graphs `K_{t,t}` always
/// report `l = 2`; otherwise the twin classes must all have size `t` and
/// the twin quotient must be a cycle of admissible length.
pub fn recognize_lt_cycle(g: &Graph) -> Result<Option<LtSpec>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() < 2 {
        return Ok(None);
    }
    if let Some(t) = balanced_complete_bipartite(g) {
        return Ok(Some(LtSpec::new(2, t)?));
    }
    let twins = g.twin_classes();
    let t = twins.classes[0].len();
    if twins.classes.iter().any(|c| c.len() != t) {
        return Ok(None);
    }
    let q = g.twin_quotient();
    let l = q.n();
    let is_cycle = q.regular_degree() == Some(2) && q.is_connected();
    Ok(if is_cycle { LtSpec::new(l, t).ok() } else { None })
}

/// `Some(t)` when `g` is `K_{t,t}`.
fn balanced_complete_bipartite(g: &Graph) -> Option<usize> {
    let Ok(Bipartiteness::Bipartite(b)) = g.bipartition() else {
        return None;
    };
    let (a, c) = (b.part(0).len(), b.part(1).len());
    (a == c && g.edge_count() == a * c).then_some(a)
}

/// Iterator over connection sets, built by choosing each inverse pair
/// `{x, -x}` in or out. Sets appear in increasing order of their choice mask.
pub struct ConnectionSets {
    group: AbelianGroup,
    orbits: Vec<u64>,
    diff: Vec<usize>,
    require_connected: bool,
    require_bipartite: bool,
    next_mask: u64,
    end: u64,
}

impl ConnectionSets {
    fn accepts(&self, set_mask: u64) -> bool {
        if !self.require_connected && !self.require_bipartite {
            return true;
        }
        let g = cayley_from_mask(&self.group, &self.diff, set_mask);
        (!self.require_connected || g.is_connected()) && (!self.require_bipartite || g.is_bipartite())
    }

    fn set_mask(&self, choice: u64) -> u64 {
        crate::graph::Bits(choice).fold(0, |m, i| m | self.orbits[i])
    }

    fn to_set(&self, set_mask: u64) -> ConnectionSet {
        ConnectionSet {
            elements: crate::graph::Bits(set_mask).map(|i| self.group.element_at(i)).collect(),
        }
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

impl Iterator for ConnectionSets {
    type Item = ConnectionSet;

    fn next(&mut self) -> Option<ConnectionSet> {
        while self.next_mask < self.end {
            let choice = self.next_mask;
            self.next_mask += 1;
            let m = self.set_mask(choice);
            if self.accepts(m) {
                return Some(self.to_set(m));
            }
        }
        None
    }
}

/// Inverse pairs `{x, -x}` of non-identity elements, as index masks ordered
/// by their smaller index.
fn inverse_orbits(group: &AbelianGroup) -> Vec<u64> {
    let neg = group.negation_table();
    (1..group.order())
        .filter(|&i| neg[i] >= i)
        .map(|i| bit(i) | bit(neg[i]))
        .collect()
}

pub fn enumerate_connection_sets(
    group: &AbelianGroup,
    require_connected: bool,
    require_bipartite: bool,
) -> Result<ConnectionSets> {
    enumerate_connection_sets_bounded(group, require_connected, require_bipartite, DEFAULT_ORDER_BOUND)
}

pub fn enumerate_connection_sets_bounded(
    group: &AbelianGroup,
    require_connected: bool,
    require_bipartite: bool,
    bound: usize,
) -> Result<ConnectionSets> {
    let order = group.order();
    let bound = bound.min(MAX_VERTICES);
    if order > bound {
        return Err(Error::BoundExceeded {
            what: "group order",
            value: order,
            max: bound,
        });
    }
    let orbits = inverse_orbits(group);
    Ok(ConnectionSets {
        group: group.clone(),
        end: 1u64 << orbits.len(),
        orbits,
        diff: group.difference_table(),
        require_connected,
        require_bipartite,
        next_mask: 0,
    })
}

/// Exhaustive check that a connected Cayley graph on an abelian group is
/// balanced exactly when it is an `(l,t)`-cycle, over every group of order
/// at most `max_order` and every generating connection set.
pub fn verify_main_theorem(max_order: usize) -> Result<VerificationReport> {
    if max_order > MAX_THEOREM_ORDER {
        return Err(Error::BoundExceeded {
            what: "max_order",
            value: max_order,
            max: MAX_THEOREM_ORDER,
        });
    }
    let mut report = VerificationReport::new("main-abelian").with_parameter("max_order", max_order as u64);
    for order in 2..=max_order {
        for group in AbelianGroup::all_of_order(order) {
            report.tally("groups", 1);
            let orbits = inverse_orbits(&group);
            let diff = group.difference_table();
            let partial = (1u64..1 << orbits.len())
                .into_par_iter()
                .fold(
                    || VerificationReport::new("main-abelian"),
                    |mut r, choice| {
                        let set_mask = crate::graph::Bits(choice).fold(0, |m, i| m | orbits[i]);
                        let g = cayley_from_mask(&group, &diff, set_mask);
                        if g.is_connected() {
                            check_cayley_instance(&group, set_mask, &g, &mut r);
                        }
                        r
                    },
                )
                .reduce(
                    || VerificationReport::new("main-abelian"),
                    |mut a, b| {
                        a.merge(b);
                        a
                    },
                );
            report.merge(partial);
        }
    }
    report.counterexamples.sort();
    Ok(report)
}

fn check_cayley_instance(group: &AbelianGroup, set_mask: u64, g: &Graph, r: &mut VerificationReport) {
    r.instances += 1;
    r.tally("connection_sets", 1);
    let is_bal = balanced(g).expect("connected by construction");
    let spec = recognize_lt_cycle(g).expect("connected by construction");
    if is_bal {
        r.tally("balanced", 1);
    }
    if spec.is_some() {
        r.tally("recognized", 1);
    }
    let set: Vec<String> = crate::graph::Bits(set_mask)
        .map(|i| group.element_at(i).to_string())
        .collect();
    if is_bal != spec.is_some() {
        r.fail(
            format!(
                "Cay({group}, {{{}}}): balanced={is_bal}, recognized={}",
                set.join(","),
                spec.map_or("none".to_string(), |s| s.to_string())
            ),
            write_graph6(g),
        );
    }
    if is_bal
        && !group
            .order()
            .is_multiple_of((2 * g.regular_degree().unwrap_or(0)).max(1))
    {
        r.fail(
            format!(
                "Cay({group}, {{{}}}): balanced but 2|S| does not divide |G|",
                set.join(",")
            ),
            write_graph6(g),
        );
    }
}

/// Exhaustive check of the structure of balanced bipartite circulants
/// containing the generator 1, for every even `n <= max_n`:
/// with 3 in `S` the graph is `K_{n/2,n/2}`; without 3 and with `|S| > 1`,
/// the least `l` with `l - 1` in `S` satisfies `4 | l`, `l >= 8`, `l | n`
/// and `S = {il +- 1}`; and balanced ones are exactly the `(l,t)`-cycles.
pub fn verify_circulant_lemmas(max_n: usize) -> Result<VerificationReport> {
    if max_n > MAX_CIRCULANT_N {
        return Err(Error::BoundExceeded {
            what: "max_n",
            value: max_n,
            max: MAX_CIRCULANT_N,
        });
    }
    let mut report = VerificationReport::new("circulant").with_parameter("max_n", max_n as u64);
    for n in (2..=max_n).step_by(2) {
        let others: Vec<usize> = (3..=n / 2).filter(|i| i % 2 == 1).collect();
        for choice in 0u64..1 << others.len() {
            let mut exps: BTreeSet<usize> = BTreeSet::from([1, n - 1]);
            for (k, &i) in others.iter().enumerate() {
                if choice & bit(k) != 0 {
                    exps.insert(i);
                    exps.insert(n - i);
                }
            }
            let exps: Vec<usize> = exps.into_iter().collect();
            check_circulant(n, &exps, &mut report)?;
        }
    }
    Ok(report)
}

fn check_circulant(n: usize, exps: &[usize], report: &mut VerificationReport) -> Result<()> {
    let g = circulant(n, exps)?;
    report.instances += 1;
    let is_bal = balanced(&g)?;
    let spec = recognize_lt_cycle(&g)?;
    let label = || format!("Cay(Z_{n}, {exps:?})");
    if is_bal {
        report.tally("balanced", 1);
    }
    if is_bal != spec.is_some() {
        report.fail(
            format!("{}: balanced={is_bal}, recognized={spec:?}", label()),
            write_graph6(&g),
        );
    }
    if !is_bal {
        return Ok(());
    }
    if exps.contains(&3) {
        report.tally("complete_case", 1);
        if !is_isomorphic(&g, &Graph::complete_bipartite(n / 2, n / 2)?)? {
            report.fail(
                format!("{}: balanced with 1,3 in S but not K_(n/2,n/2)", label()),
                write_graph6(&g),
            );
        }
    } else if exps.len() > 1 {
        report.tally("cycle_case", 1);
        let l = exps.iter().find(|&&s| s >= 2).map(|s| s + 1).expect("|S| > 1");
        let expected: BTreeSet<usize> = if n.is_multiple_of(l) {
            (0..n / l)
                .flat_map(|i| [(i * l + 1) % n, (i * l + n - 1) % n])
                .collect()
        } else {
            BTreeSet::new()
        };
        let structure_ok = l % 4 == 0
            && l >= 8
            && n.is_multiple_of(l)
            && expected == exps.iter().copied().collect::<BTreeSet<_>>()
            && spec.is_some_and(|s| s.l() == l && s.t() == n / l);
        if !structure_ok {
            report.fail(
                format!("{}: balanced but S is not {{il+-1}} for l={l}", label()),
                write_graph6(&g),
            );
        }
    }
    Ok(())
}
