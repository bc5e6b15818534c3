use std::fmt;

use super::record::{ab_change, yz_zeta_change};
use super::run::ResidualStats;
use super::{weight_a, weight_b, Buckets, Deletion, Sigma, Snapshot, StepKind, StepRecord, VertexClass};
use crate::error::{Error, Result};
use crate::pairing::{LazyPairing, PairingSource, PointId, VertexId};

const NONE: u32 = u32::MAX;

/// Which class the next iteration draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Priority {
    Y1,
    Y2,
    Z1,
    Y3,
    /// Only `Z2` vertices remain: the residual graph is 2-regular.
    Done2Regular,
    /// Nothing remains.
    DoneEmpty,
}

/// First failed consistency check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub step: usize,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.detail)
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Invariant { step: v.step, detail: v.detail }
    }
}

/// Event tallies accumulated over the steps of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Counters {
    /// Steps with `δ = ζ`.
    pub deletion_zeta: usize,
    /// Steps with `σ = loop`.
    pub loop_events: usize,
    /// Step 1(b) selections that exposed a loop at the chosen vertex.
    pub zeta_loops: usize,
    /// Steps with `σ = multi`.
    pub multi_events: usize,
    /// Cycles of `U` closed by adding an edge between the two ends of a path.
    pub cycles_closed: usize,
    pub max_zeta: i64,
    pub by_kind: [usize; 4],
}

/// The greedy's full state on top of a pairing source.
#[derive(Clone, Debug)]
pub struct Engine<S> {
    n: usize,
    source: S,
    degree: Vec<u8>,
    matched: Vec<u8>,
    buckets: Buckets,
    // other endpoint of the U-path ending at v; v itself when unmatched,
    // NONE for interior vertices
    link: Vec<u32>,
    edges: Vec<(u32, u32)>,
    sum_a: i64,
    sum_b: i64,
    steps: usize,
    counters: Counters,
    finished: Option<ResidualStats>,
}

/// The engine under its domain name.
pub type EngineState<S = LazyPairing> = Engine<S>;

impl Engine<LazyPairing> {
    /// All vertices in `Y3` over a fresh lazy pairing.
    pub fn init(n: usize, seed: u64) -> Result<Self> {
        Ok(Self::new(LazyPairing::new(n, seed)?))
    }
}

impl<S: PairingSource> Engine<S> {
    /// Starts the greedy on a pairing source with nothing exposed yet.
    pub fn new(source: S) -> Self {
        let n = source.vertex_count();
        assert_eq!(source.unpaired_len(), 3 * n, "pairing source must be untouched");
        Self {
            n,
            source,
            degree: vec![3; n],
            matched: vec![0; n],
            buckets: Buckets::new(n, VertexClass::Y3),
            link: (0..n as u32).collect(),
            edges: Vec::with_capacity(n),
            sum_a: n as i64,
            sum_b: 2 * n as i64,
            steps: 0,
            counters: Counters::default(),
            finished: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn into_source(self) -> S {
        self.source
    }

    /// Edges of the 2-matching built so far; parallel edges are allowed.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    pub fn class_of(&self, v: VertexId) -> VertexClass {
        self.buckets.class_of(v.0)
    }

    pub fn class_len(&self, c: VertexClass) -> usize {
        self.buckets.len(c)
    }

    /// Other endpoint of the path of `U` ending at `v`, if `v` is an endpoint.
    pub fn path_partner(&self, v: VertexId) -> Option<VertexId> {
        match self.link[v.index()] {
            NONE => None,
            u => Some(VertexId(u)),
        }
    }

    pub fn residual(&self) -> Option<&ResidualStats> {
        self.finished.as_ref()
    }

    pub fn snapshot(&self) -> Snapshot {
        let b = &self.buckets;
        Snapshot {
            y: b.len(VertexClass::Y3) as i64,
            z: b.len(VertexClass::Z2) as i64,
            zeta: (b.len(VertexClass::Y1) + 2 * b.len(VertexClass::Y2) + b.len(VertexClass::Z1)) as i64,
            a: self.sum_a,
            b: self.sum_b,
            m: (self.source.unpaired_len() / 2) as i64,
        }
    }

    pub fn priority(&self) -> Priority {
        let b = &self.buckets;
        if !b.is_empty(VertexClass::Y1) {
            Priority::Y1
        } else if !b.is_empty(VertexClass::Y2) {
            Priority::Y2
        } else if !b.is_empty(VertexClass::Z1) {
            Priority::Z1
        } else if !b.is_empty(VertexClass::Y3) {
            Priority::Y3
        } else if !b.is_empty(VertexClass::Z2) {
            Priority::Done2Regular
        } else {
            Priority::DoneEmpty
        }
    }

    fn violation(&self, detail: impl Into<String>) -> Error {
        Error::Invariant { step: self.steps, detail: detail.into() }
    }

    fn set_vertex(&mut self, v: u32, degree: u8, matched: u8) {
        let i = v as usize;
        self.sum_a += weight_a(degree, matched) - weight_a(self.degree[i], self.matched[i]);
        self.sum_b += weight_b(degree, matched) - weight_b(self.degree[i], self.matched[i]);
        self.degree[i] = degree;
        self.matched[i] = matched;
        self.buckets.move_to(v, VertexClass::from_parts(degree, matched));
    }

    fn unpaired_points(&self, v: u32) -> ([PointId; 3], usize) {
        let mut out = [PointId(0); 3];
        let mut k = 0;
        for p in VertexId(v).points() {
            if self.source.is_unpaired(p) {
                out[k] = p;
                k += 1;
            }
        }
        (out, k)
    }

    fn add_edge(&mut self, x: u32, y: u32) -> Result<()> {
        if x == y {
            return Err(self.violation(format!("loop edge at vertex {x} added to U")));
        }
        let (ex, ey) = (self.link[x as usize], self.link[y as usize]);
        if ex == NONE || ey == NONE {
            return Err(self.violation(format!("edge ({x},{y}) touches an interior vertex")));
        }
        self.edges.push((x, y));
        if ex == y {
            // both ends of one path: the path closes into a cycle
            self.link[x as usize] = NONE;
            self.link[y as usize] = NONE;
            self.counters.cycles_closed += 1;
        } else {
            self.link[ex as usize] = ey;
            self.link[ey as usize] = ex;
            if ex != x {
                self.link[x as usize] = NONE;
            }
            if ey != y {
                self.link[y as usize] = NONE;
            }
        }
        Ok(())
    }

    fn symbol(&self, v: u32) -> Result<Deletion> {
        let c = self.buckets.class_of(v);
        c.symbol()
            .ok_or_else(|| self.violation(format!("exposure reached vertex {v} in class {}", c.name())))
    }

    /// Bookkeeping for the vertex `w` just reached by a selection move whose
    /// point has already been consumed. Returns the deletion symbol when `w`
    /// was in `Z2` and its remaining edge had to be exposed and deleted.
    fn reassign(&mut self, w: u32) -> Result<Option<Deletion>> {
        let (dw, mw) = (self.degree[w as usize], self.matched[w as usize]);
        if mw == 0 {
            self.set_vertex(w, dw - 1, 1);
            return Ok(None);
        }
        // already on a path end: w becomes saturated and leaves the graph
        self.set_vertex(w, dw - 1, 2);
        if dw - 1 == 0 {
            return Ok(None);
        }
        let (pts, k) = self.unpaired_points(w);
        if k != 1 {
            return Err(self.violation(format!("saturated vertex {w} has {k} open points")));
        }
        let q = self.source.reveal_partner(pts[0]);
        self.set_vertex(w, 0, 2);
        let x = q.vertex().0;
        let delta = self.symbol(x)?;
        let (dx, mx) = (self.degree[x as usize], self.matched[x as usize]);
        self.set_vertex(x, dx - 1, mx);
        Ok(Some(delta))
    }

    /// Executes one iteration of the greedy.
    ///
    /// Randomness is drawn in a fixed order: the vertex (uniform over its
    /// bucket), the point to expose (uniform over the vertex's open points in
    /// increasing order), the selection partner, then the deletion partner.
    pub fn step(&mut self) -> Result<StepRecord> {
        let (kind, class) = match self.priority() {
            Priority::Y1 => (StepKind::OneA, VertexClass::Y1),
            Priority::Y2 => (StepKind::OneB, VertexClass::Y2),
            Priority::Z1 => (StepKind::OneC, VertexClass::Z1),
            Priority::Y3 => (StepKind::Two, VertexClass::Y3),
            p => return Err(Error::Config(format!("no step available in state {p:?}"))),
        };
        let before = self.snapshot();
        let pick = self.source.choose(self.buckets.len(class));
        let v = self.buckets.get(class, pick);
        let (pts, k) = self.unpaired_points(v);
        let pv = pts[self.source.choose(k)];
        let w = self.source.reveal_partner(pv).vertex().0;
        let (dv, mv) = (self.degree[v as usize], self.matched[v as usize]);

        let (sigma, delta) = if w == v {
            match kind {
                StepKind::Two => {
                    self.set_vertex(v, 1, 0);
                    self.counters.loop_events += 1;
                    (Sigma::Loop, None)
                }
                StepKind::OneB => {
                    self.set_vertex(v, 0, 0);
                    self.counters.zeta_loops += 1;
                    (Sigma::Zeta, None)
                }
                _ => return Err(self.violation(format!("vertex {v} of degree {dv} exposed a loop"))),
            }
        } else {
            let sigma = if kind == StepKind::OneC
                && self.link[v as usize] == w
                && self.buckets.class_of(w) == VertexClass::Z2
            {
                Sigma::Multi
            } else {
                match self.symbol(w)? {
                    Deletion::Y => Sigma::Y,
                    Deletion::Z => Sigma::Z,
                    Deletion::Zeta => Sigma::Zeta,
                }
            };
            self.set_vertex(v, dv - 1, mv + 1);
            self.add_edge(v, w)?;
            let delta = self.reassign(w)?;
            (sigma, delta)
        };

        if delta == Some(Deletion::Zeta) {
            self.counters.deletion_zeta += 1;
        }
        if sigma == Sigma::Multi {
            self.counters.multi_events += 1;
        }
        self.counters.by_kind[kind as usize] += 1;
        let record = StepRecord { i: self.steps, kind, sigma, delta, before, after: self.snapshot() };
        self.steps += 1;
        self.counters.max_zeta = self.counters.max_zeta.max(record.after.zeta);
        self.check_step(&record)?;
        Ok(record)
    }

    /// O(1) checks after each step: the exact linear identities between the
    /// tracked variables and the one-step change identities.
    fn check_step(&self, r: &StepRecord) -> Result<()> {
        let s = &r.after;
        if 2 * s.m != 3 * s.y + 2 * s.z + s.zeta {
            return Err(self.violation(format!("2M = {} but 3Y + 2Z + zeta = {}", 2 * s.m, 3 * s.y + 2 * s.z + s.zeta)));
        }
        if s.a != s.y + s.zeta || s.b != 2 * s.y + s.z + s.zeta {
            return Err(self.violation(format!("A = {}, B = {} disagree with Y = {}, Z = {}, zeta = {}", s.a, s.b, s.y, s.z, s.zeta)));
        }
        if r.delta.is_some() != r.sigma.forces_deletion() {
            return Err(self.violation(format!("sigma = {} with delta = {:?}", r.sigma, r.delta)));
        }
        let d = r.change();
        if (d.a, d.b) != ab_change(r.sigma, r.delta) {
            return Err(self.violation(format!("(dA, dB) = ({}, {}) for sigma = {}, delta = {:?}", d.a, d.b, r.sigma, r.delta)));
        }
        if (d.y, d.z, d.zeta) != yz_zeta_change(r.sigma, r.delta, r.before.zeta > 0) {
            return Err(self.violation(format!("(dY, dZ, dzeta) = ({}, {}, {}) for sigma = {}, delta = {:?}", d.y, d.z, d.zeta, r.sigma, r.delta)));
        }
        Ok(())
    }

    /// Exposes the residual 2-regular graph and places a maximum matching on
    /// each of its cycles: edges `(c0,c1), (c2,c3), ...` walking from the
    /// lowest-index vertex of the cycle.
    pub fn finish(&mut self) -> Result<ResidualStats> {
        if let Some(r) = &self.finished {
            return Ok(r.clone());
        }
        match self.priority() {
            Priority::Done2Regular | Priority::DoneEmpty => {}
            p => return Err(Error::Config(format!("cannot finish in state {p:?}"))),
        }
        let mut zs: Vec<u32> = self.buckets.members(VertexClass::Z2).to_vec();
        zs.sort_unstable();
        let mut open = vec![[NONE; 2]; 0];
        let mut slot = vec![NONE; 0];
        if !zs.is_empty() {
            slot = vec![NONE; self.n];
            open = Vec::with_capacity(zs.len());
            for (k, &v) in zs.iter().enumerate() {
                let (pts, cnt) = self.unpaired_points(v);
                if cnt != 2 {
                    return Err(self.violation(format!("Z2 vertex {v} has {cnt} open points")));
                }
                open.push([pts[0].0, pts[1].0]);
                slot[v as usize] = k as u32;
            }
        }
        let pairs = self.source.reveal_all();
        let mut partner = std::collections::HashMap::with_capacity(2 * pairs.len());
        for (p, q) in pairs {
            partner.insert(p.0, q.0);
            partner.insert(q.0, p.0);
        }

        let mut stats = ResidualStats { vertices: zs.len(), ..Default::default() };
        let mut seen = vec![false; zs.len()];
        let mut cycle = Vec::new();
        for (k0, &c0) in zs.iter().enumerate() {
            if seen[k0] {
                continue;
            }
            cycle.clear();
            let entry0 = open[k0][0];
            let (mut k, mut entry) = (k0, entry0);
            loop {
                seen[k] = true;
                cycle.push(zs[k]);
                let exit = if open[k][0] == entry { open[k][1] } else { open[k][0] };
                let q = *partner
                    .get(&exit)
                    .ok_or_else(|| self.violation(format!("residual point {exit} left unpaired")))?;
                let next = PointId(q).vertex().0;
                if next == c0 && q == entry0 {
                    break;
                }
                k = slot[next as usize] as usize;
                if k == NONE as usize || seen[k] {
                    return Err(self.violation(format!("residual walk from {c0} left the 2-regular part")));
                }
                entry = q;
            }
            stats.cycles += 1;
            match cycle.len() {
                1 => stats.loops += 1,
                2 => stats.double_edges += 1,
                _ => {}
            }
            if cycle.len() % 2 == 1 {
                stats.odd_cycles += 1;
            }
            for pair in cycle.chunks(2) {
                match *pair {
                    [x, y] => {
                        self.set_vertex(x, 0, 2);
                        self.set_vertex(y, 0, 2);
                        self.add_edge(x, y)?;
                    }
                    [x] => self.set_vertex(x, 0, 1),
                    _ => unreachable!(),
                }
            }
        }
        stats.matching_edges = (stats.vertices - stats.odd_cycles) / 2;
        self.finished = Some(stats.clone());
        self.validate()?;
        let s = self.snapshot();
        if s != Snapshot::default() {
            return Err(self.violation(format!("residual variables nonzero after finish: {s:?}")));
        }
        if self.source.exposures() * 2 != 3 * self.n {
            return Err(self.violation(format!("{} exposures, expected {}", self.source.exposures(), 3 * self.n / 2)));
        }
        Ok(stats)
    }

    /// Full O(n) audit of the state: bucket membership against (degree,
    /// matched), open points against the pairing, the running sums for `A`
    /// and `B`, the linear identities, the endpoint links and `U` itself.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let fail = |detail: String| Err(Violation { step: self.steps, detail });
        if let Err(e) = self.buckets.check() {
            return fail(e);
        }
        let (mut sum_a, mut sum_b, mut open) = (0i64, 0i64, 0usize);
        let mut incidence = vec![0u8; self.n];
        for &(x, y) in &self.edges {
            if x == y {
                return fail(format!("U contains loop at {x}"));
            }
            for v in [x, y] {
                incidence[v as usize] += 1;
                if incidence[v as usize] > 2 {
                    return fail(format!("vertex {v} has U-degree above 2"));
                }
            }
        }
        for v in 0..self.n as u32 {
            let i = v as usize;
            let (d, m) = (self.degree[i], self.matched[i]);
            if m != incidence[i] {
                return fail(format!("vertex {v}: matched = {m} but {} U edges", incidence[i]));
            }
            let (_, k) = self.unpaired_points(v);
            if k != d as usize {
                return fail(format!("vertex {v}: degree {d} but {k} open points"));
            }
            if m == 2 && d != 0 {
                return fail(format!("saturated vertex {v} still has degree {d}"));
            }
            if m < 2 && self.buckets.class_of(v) != VertexClass::from_parts(d, m) {
                return fail(format!("vertex {v} in bucket {} with degree {d}, matched {m}", self.buckets.class_of(v).name()));
            }
            if m == 2 && self.buckets.class_of(v) != VertexClass::Removed {
                return fail(format!("saturated vertex {v} in bucket {}", self.buckets.class_of(v).name()));
            }
            sum_a += weight_a(d, m);
            sum_b += weight_b(d, m);
            open += d as usize;

            let l = self.link[i];
            match m {
                0 if l != v => return fail(format!("unmatched vertex {v} links to {l}")),
                1 if l == NONE || l == v => return fail(format!("path end {v} has no partner")),
                1 if self.link[l as usize] != v || self.matched[l as usize] != 1 => {
                    return fail(format!("path ends {v} and {l} are not mutual"))
                }
                2 if l != NONE => return fail(format!("interior vertex {v} still linked to {l}")),
                _ => {}
            }
        }
        if open != self.source.unpaired_len() {
            return fail(format!("degrees sum to {open} but {} points are open", self.source.unpaired_len()));
        }
        if sum_a != self.sum_a || sum_b != self.sum_b {
            return fail(format!("A/B running sums ({}, {}) differ from recount ({sum_a}, {sum_b})", self.sum_a, self.sum_b));
        }
        let s = self.snapshot();
        if 2 * s.m != 3 * s.y + 2 * s.z + s.zeta || s.a != s.y + s.zeta || s.b != 2 * s.y + s.z + s.zeta {
            return fail(format!("linear identities fail: {s:?}"));
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn buckets_mut(&mut self) -> &mut Buckets {
        &mut self.buckets
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::{FixedPairing, ScriptedChooser};

    #[test]
    fn init_state_matches_definitions() {
        let e = Engine::init(100, 1).unwrap();
        let s = e.snapshot();
        assert_eq!((s.y, s.z, s.zeta, s.a, s.b, s.m), (100, 0, 0, 100, 200, 150));
        assert_eq!(2 * s.m, 3 * s.y + 2 * s.z + s.zeta);
        assert!(e.validate().is_ok());
        let s2 = Engine::init(2, 1).unwrap().snapshot();
        assert_eq!((s2.a, s2.b), (2, 4));
    }

    #[test]
    fn init_rejects_odd_n() {
        assert!(matches!(Engine::init(7, 0), Err(Error::OddVertexCount(7))));
    }

    #[test]
    fn priority_order() {
        let mut e = Engine::init(10, 1).unwrap();
        assert_eq!(e.priority(), Priority::Y3);
        e.buckets.move_to(3, VertexClass::Y1);
        e.buckets.move_to(5, VertexClass::Y2);
        assert_eq!(e.priority(), Priority::Y1);
        e.buckets.move_to(3, VertexClass::Removed);
        assert_eq!(e.priority(), Priority::Y2);
        e.buckets.move_to(5, VertexClass::Z1);
        assert_eq!(e.priority(), Priority::Z1);
        for v in 0..10 {
            e.buckets.move_to(v, VertexClass::Z2);
        }
        assert_eq!(e.priority(), Priority::Done2Regular);
        for v in 0..10 {
            e.buckets.move_to(v, VertexClass::Removed);
        }
        assert_eq!(e.priority(), Priority::DoneEmpty);
    }

    #[test]
    fn first_step_is_type_two() {
        for seed in 0..50 {
            let mut e = Engine::init(40, seed).unwrap();
            let r = e.step().unwrap();
            assert_eq!(r.kind, StepKind::Two);
            assert!(matches!(r.sigma, Sigma::Y | Sigma::Loop));
            assert_eq!(e.source().exposures(), 1);
        }
    }

    #[test]
    fn corrupted_bucket_is_reported() {
        let mut e = Engine::init(20, 4).unwrap();
        for _ in 0..5 {
            e.step().unwrap();
        }
        assert!(e.validate().is_ok());
        let v = e.buckets.members(VertexClass::Y3)[0];
        e.buckets_mut().corrupt(v, VertexClass::Z1);
        assert!(e.validate().is_err());
    }

    #[test]
    fn run_to_end_validates_every_step() {
        for seed in 0..20 {
            let mut e = Engine::init(200, seed).unwrap();
            while !matches!(e.priority(), Priority::Done2Regular | Priority::DoneEmpty) {
                e.step().unwrap();
                e.validate().unwrap();
            }
            e.finish().unwrap();
            assert_eq!(e.source().exposures(), 300);
        }
    }

    // Triple edge between vertices 0 and 1: step 2 joins them, then both sit
    // in Z2 with a double edge left, which finishes as a 2-cycle.
    #[test]
    fn triple_edge_closes_a_two_cycle() {
        let partner = vec![3, 4, 5, 0, 1, 2];
        let mut e = Engine::new(FixedPairing::new(partner, ScriptedChooser::default()).unwrap());
        let r = e.step().unwrap();
        assert_eq!((r.kind, r.sigma, r.delta), (StepKind::Two, Sigma::Y, None));
        assert_eq!(e.priority(), Priority::Done2Regular);
        let res = e.finish().unwrap();
        assert_eq!((res.cycles, res.double_edges, res.odd_cycles), (1, 1, 0));
        assert_eq!(e.edges().len(), 2);
    }

    // Loops at both vertices joined by one edge. Choosing vertex 0 and its
    // point 0 exposes the loop first.
    #[test]
    fn loop_then_pendant() {
        let partner = vec![1, 0, 3, 2, 5, 4];
        let chooser = ScriptedChooser::new(vec![(0, 2), (0, 3)]);
        let mut e = Engine::new(FixedPairing::new(partner, chooser).unwrap());
        let r = e.step().unwrap();
        assert_eq!(r.sigma, Sigma::Loop);
        assert_eq!(e.class_of(VertexId(0)), VertexClass::Y1);
        let r = e.step().unwrap();
        assert_eq!((r.kind, r.sigma), (StepKind::OneA, Sigma::Y));
        let res = e.finish().unwrap();
        assert_eq!((res.loops, res.odd_cycles), (1, 1));
        assert_eq!(e.edges(), &[(0, 1)]);
    }
}
