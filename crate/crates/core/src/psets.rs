//! Partial actions of finite groups (and monoids) on finite sets:
//! restriction from global actions, globalization by equivalence-class
//! quotient, and the set-coequalizer construction as an independent oracle.
//!
//! The quotient route builds the relation `(g,x) ~ (h,y) iff (h⁻¹g, x)` is
//! in the action domain with `α(h⁻¹g, x) = y` directly; for a valid partial
//! group action this relation is already an equivalence, which the code
//! asserts instead of assuming. The coequalizer route closes the graph of
//! the parallel pair with a union–find and must produce the identical
//! partition; the two routes cross-check each other on every instance.
//!
//! Monoid (non-group) partial actions are accepted by the data model and
//! by [`PartialGSet::check`], but the globalization operations require a
//! group: the equivalence rule needs inverses, and the monoid case is
//! deliberately left unimplemented rather than guessed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PsetError {
    #[error("labels must be pairwise distinct (`{0}` repeats)")]
    DuplicateLabel(String),
    #[error("{0}: table shape does not match the declared elements")]
    TableShape(&'static str),
    #[error("{0}: table entry out of range")]
    IndexRange(&'static str),
    #[error("monoid is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("unit law fails at {0}")]
    UnitLaw(String),
    #[error("operation requires a group, but `{0}` has no two-sided inverse")]
    NotAGroup(String),
    #[error("carrier subset is empty or contains out-of-range points")]
    BadSubset,
    #[error("partial action data inconsistent: {0}")]
    BadPartialData(String),
    #[error("partial action law `{law}` fails at {witness}")]
    Law { law: &'static str, witness: String },
    #[error("global action law fails: {0}")]
    ActionLaw(String),
    #[error("quotient and coequalizer globalizations disagree: {0}")]
    OracleDisagreement(String),
    #[error("phi/psi witness check failed: {0}")]
    PhiPsi(String),
    #[error("restriction round trip failed: {0}")]
    RoundTrip(String),
}

/// A finite monoid given by its multiplication table. When every element
/// has a two-sided inverse the inverse table is precomputed and the monoid
/// is a group.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
    inverses: Option<Vec<usize>>,
}

impl FiniteMonoid {
    /// Validates associativity and the unit laws at construction.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self, PsetError> {
        let n = elements.len();
        for (i, l) in elements.iter().enumerate() {
            if elements[..i].contains(l) {
                return Err(PsetError::DuplicateLabel(l.clone()));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(PsetError::TableShape("monoid"));
        }
        if unit >= n || table.iter().flatten().any(|&v| v >= n) {
            return Err(PsetError::IndexRange("monoid"));
        }
        for g in 0..n {
            if table[unit][g] != g || table[g][unit] != g {
                return Err(PsetError::UnitLaw(elements[g].clone()));
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if table[table[g][h]][k] != table[g][table[h][k]] {
                        return Err(PsetError::NotAssociative(
                            elements[g].clone(),
                            elements[h].clone(),
                            elements[k].clone(),
                        ));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        let mut is_group = true;
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == unit && table[h][g] == unit) {
                Some(h) => inverses.push(h),
                None => {
                    is_group = false;
                    break;
                }
            }
        }
        Ok(FiniteMonoid {
            elements,
            table,
            unit,
            inverses: is_group.then_some(inverses),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_group(&self) -> bool {
        self.inverses.is_some()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> Option<usize> {
        self.inverses.as_ref().map(|t| t[g])
    }

    pub fn label(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(order {})",
            if self.is_group() { "Group" } else { "Monoid" },
            self.order()
        )
    }
}

/// A global action `β : G × Y -> Y` of a finite monoid on a finite set.
#[derive(Clone, PartialEq, Eq)]
pub struct GlobalGSet {
    monoid: Arc<FiniteMonoid>,
    carrier: Vec<String>,
    action: Vec<Vec<usize>>,
}

impl GlobalGSet {
    pub fn new(
        monoid: Arc<FiniteMonoid>,
        carrier: Vec<String>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, PsetError> {
        for (i, l) in carrier.iter().enumerate() {
            if carrier[..i].contains(l) {
                return Err(PsetError::DuplicateLabel(l.clone()));
            }
        }
        if action.len() != monoid.order() || action.iter().any(|r| r.len() != carrier.len()) {
            return Err(PsetError::TableShape("action"));
        }
        if action.iter().flatten().any(|&v| v >= carrier.len()) {
            return Err(PsetError::IndexRange("action"));
        }
        Ok(GlobalGSet {
            monoid,
            carrier,
            action,
        })
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn act(&self, g: usize, y: usize) -> usize {
        self.action[g][y]
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// Unit and composition laws, exactly.
    pub fn check(&self) -> Result<(), PsetError> {
        let e = self.monoid.unit();
        for y in 0..self.size() {
            if self.act(e, y) != y {
                return Err(PsetError::ActionLaw(format!(
                    "unit does not fix `{}`",
                    self.carrier[y]
                )));
            }
        }
        for g in 0..self.monoid.order() {
            for h in 0..self.monoid.order() {
                for y in 0..self.size() {
                    if self.act(g, self.act(h, y)) != self.act(self.monoid.mul(g, h), y) {
                        return Err(PsetError::ActionLaw(format!(
                            "composition fails at ({}, {}, {})",
                            self.monoid.label(g),
                            self.monoid.label(h),
                            self.carrier[y]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Orbit of a set of points under the action.
    pub fn orbit(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut orbit = seed.clone();
        loop {
            let mut grew = false;
            for &y in orbit.clone().iter() {
                for g in 0..self.monoid.order() {
                    if orbit.insert(self.act(g, y)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return orbit;
            }
        }
    }
}

impl fmt::Debug for GlobalGSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GlobalGSet(|Y| = {} over {:?})", self.size(), self.monoid)
    }
}

/// A partial action: a domain `G•X ⊆ G×X` and a map `α : G•X -> X`,
/// subject to the partial-action laws checked by [`Self::check`].
#[derive(Clone, PartialEq, Eq)]
pub struct PartialGSet {
    monoid: Arc<FiniteMonoid>,
    carrier: Vec<String>,
    domain: BTreeSet<(usize, usize)>,
    map: BTreeMap<(usize, usize), usize>,
}

impl PartialGSet {
    pub fn new(
        monoid: Arc<FiniteMonoid>,
        carrier: Vec<String>,
        domain: BTreeSet<(usize, usize)>,
        map: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, PsetError> {
        for (i, l) in carrier.iter().enumerate() {
            if carrier[..i].contains(l) {
                return Err(PsetError::DuplicateLabel(l.clone()));
            }
        }
        for &(g, x) in &domain {
            if g >= monoid.order() || x >= carrier.len() {
                return Err(PsetError::BadPartialData(format!(
                    "domain pair ({g}, {x}) out of range"
                )));
            }
        }
        if map.keys().any(|k| !domain.contains(k)) || domain.iter().any(|k| !map.contains_key(k)) {
            return Err(PsetError::BadPartialData(
                "alpha must be defined exactly on the domain".into(),
            ));
        }
        if map.values().any(|&v| v >= carrier.len()) {
            return Err(PsetError::BadPartialData("alpha value out of range".into()));
        }
        Ok(PartialGSet {
            monoid,
            carrier,
            domain,
            map,
        })
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn domain(&self) -> &BTreeSet<(usize, usize)> {
        &self.domain
    }

    pub fn alpha(&self, g: usize, x: usize) -> Option<usize> {
        self.map.get(&(g, x)).copied()
    }

    fn pair_label(&self, g: usize, x: usize) -> String {
        format!("({}, {})", self.monoid.label(g), self.carrier[x])
    }

    /// The partial-action laws: the unit acts totally as the identity;
    /// composition extends the domain coherently; for groups, domains are
    /// closed under inversion with `α_{g⁻¹}` inverting `α_g`.
    pub fn check(&self) -> Result<(), PsetError> {
        let e = self.monoid.unit();
        for x in 0..self.size() {
            if self.alpha(e, x) != Some(x) {
                return Err(PsetError::Law {
                    law: "unit",
                    witness: self.pair_label(e, x),
                });
            }
        }
        for &(h, x) in &self.domain {
            let hx = self.map[&(h, x)];
            for g in 0..self.monoid.order() {
                if let Some(ghx) = self.alpha(g, hx) {
                    let gh = self.monoid.mul(g, h);
                    match self.alpha(gh, x) {
                        Some(v) if v == ghx => {}
                        _ => {
                            return Err(PsetError::Law {
                                law: "composition",
                                witness: format!(
                                    "{} then {}",
                                    self.pair_label(h, x),
                                    self.pair_label(g, hx)
                                ),
                            });
                        }
                    }
                }
            }
        }
        if self.monoid.is_group() {
            for &(g, x) in &self.domain {
                let gx = self.map[&(g, x)];
                let gi = self.monoid.inv(g).expect("group");
                if self.alpha(gi, gx) != Some(x) {
                    return Err(PsetError::Law {
                        law: "inversion",
                        witness: self.pair_label(g, x),
                    });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PartialGSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PartialGSet(|X| = {}, |G•X| = {} over {:?})",
            self.size(),
            self.domain.len(),
            self.monoid
        )
    }
}

/// Restriction of a global action to a subset of its carrier: the domain
/// keeps exactly the pairs whose image stays inside the subset.
pub fn restrict(global: &GlobalGSet, subset: &BTreeSet<usize>) -> Result<PartialGSet, PsetError> {
    if subset.is_empty() || subset.iter().any(|&x| x >= global.size()) {
        return Err(PsetError::BadSubset);
    }
    let points: Vec<usize> = subset.iter().copied().collect();
    let index_of: BTreeMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let carrier: Vec<String> = points.iter().map(|&p| global.carrier()[p].clone()).collect();
    let mut domain = BTreeSet::new();
    let mut map = BTreeMap::new();
    for g in 0..global.monoid().order() {
        for (i, &p) in points.iter().enumerate() {
            let image = global.act(g, p);
            if let Some(&j) = index_of.get(&image) {
                domain.insert((g, i));
                map.insert((g, i), j);
            }
        }
    }
    let partial = PartialGSet::new(global.monoid().clone(), carrier, domain, map)?;
    debug_assert!(partial.check().is_ok());
    Ok(partial)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn unite(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            // keep the smaller index as the root for determinism
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// The globalized action: a quotient of `G × X`, the embedding of the
/// original carrier, and the projection onto classes.
#[derive(Clone, Debug)]
pub struct PSetGlobalization {
    pub global: GlobalGSet,
    /// Lexicographically least `(g, x)` pair of each class, in class order.
    pub class_reps: Vec<(usize, usize)>,
    /// `class_of[g][x]` is the class of the pair `(g, x)`.
    pub class_of: Vec<Vec<usize>>,
    /// `embed[x]` is the class of `(e, x)`.
    pub embed: Vec<usize>,
}

impl PSetGlobalization {
    pub fn size(&self) -> usize {
        self.class_reps.len()
    }

    pub fn embedded_points(&self) -> BTreeSet<usize> {
        self.embed.iter().copied().collect()
    }
}

fn partition_roots(p: &PartialGSet, uf: &mut UnionFind) -> Vec<usize> {
    let x = p.size();
    (0..p.monoid().order() * x).map(|i| uf.find(i)).collect()
}

/// Builds the globalization data from a partition of `G × X`, asserting
/// that the induced action and embedding are well-defined.
fn globalization_from_partition(p: &PartialGSet, roots: &[usize]) -> PSetGlobalization {
    let g_order = p.monoid().order();
    let x_size = p.size();
    let pair = |g: usize, x: usize| g * x_size + x;

    let mut rep_of_root: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for g in 0..g_order {
        for x in 0..x_size {
            let r = roots[pair(g, x)];
            let entry = rep_of_root.entry(r).or_insert((g, x));
            if (g, x) < *entry {
                *entry = (g, x);
            }
        }
    }
    let mut class_reps: Vec<(usize, usize)> = rep_of_root.values().copied().collect();
    class_reps.sort();
    let class_index: BTreeMap<(usize, usize), usize> = class_reps
        .iter()
        .enumerate()
        .map(|(i, &rep)| (rep, i))
        .collect();
    let root_to_class: BTreeMap<usize, usize> = rep_of_root
        .iter()
        .map(|(&root, rep)| (root, class_index[rep]))
        .collect();
    let class_of: Vec<Vec<usize>> = (0..g_order)
        .map(|g| (0..x_size).map(|x| root_to_class[&roots[pair(g, x)]]).collect())
        .collect();

    // induced action h·[g, x] = [hg, x]; must not depend on the member
    let mut action = vec![vec![usize::MAX; class_reps.len()]; g_order];
    for h in 0..g_order {
        for g in 0..g_order {
            for x in 0..x_size {
                let c = class_of[g][x];
                let target = class_of[p.monoid().mul(h, g)][x];
                if action[h][c] == usize::MAX {
                    action[h][c] = target;
                } else {
                    assert_eq!(
                        action[h][c], target,
                        "globalized action is not well-defined on classes"
                    );
                }
            }
        }
    }

    let labels: Vec<String> = class_reps
        .iter()
        .map(|&(g, x)| format!("[{},{}]", p.monoid().label(g), p.carrier()[x]))
        .collect();
    let global = GlobalGSet::new(p.monoid().clone(), labels, action).expect("globalized action");
    global.check().expect("globalized action satisfies the action laws");

    let e = p.monoid().unit();
    let embed: Vec<usize> = (0..x_size).map(|x| class_of[e][x]).collect();
    let distinct: BTreeSet<usize> = embed.iter().copied().collect();
    assert_eq!(distinct.len(), embed.len(), "embedding is not injective");
    // partial equivariance of the embedding
    for &(g, x) in p.domain() {
        assert_eq!(
            global.act(g, embed[x]),
            embed[p.alpha(g, x).expect("domain pair")],
            "embedding is not partially equivariant"
        );
    }
    // co-generation: the whole carrier is the orbit of the embedded points
    assert_eq!(
        global.orbit(&distinct).len(),
        class_reps.len(),
        "globalization carries points outside the orbit of the embedding"
    );

    PSetGlobalization {
        global,
        class_reps,
        class_of,
        embed,
    }
}

/// Globalization by the explicit equivalence `(g,x) ~ (h,y) iff
/// (h⁻¹g, x) ∈ G•X and α(h⁻¹g, x) = y` on `G × X`.
///
/// For a valid partial group action the generated relation is already an
/// equivalence; this is asserted (with the offending pairs on failure)
/// rather than silently closed over.
pub fn globalize_quotient(p: &PartialGSet) -> Result<PSetGlobalization, PsetError> {
    if !p.monoid().is_group() {
        let witness = (0..p.monoid().order())
            .find(|&g| p.monoid().inv(g).is_none())
            .map(|g| p.monoid().label(g).to_string())
            .unwrap_or_default();
        return Err(PsetError::NotAGroup(witness));
    }
    p.check()?;
    let g_order = p.monoid().order();
    let x_size = p.size();
    let pair = |g: usize, x: usize| g * x_size + x;
    let related = |g: usize, x: usize, h: usize, y: usize| -> bool {
        let d = p.monoid().mul(p.monoid().inv(h).expect("group"), g);
        p.alpha(d, x) == Some(y)
    };

    // the printed rule is already reflexive, symmetric and transitive for
    // valid partial group actions; certify instead of assuming
    for g in 0..g_order {
        for x in 0..x_size {
            assert!(related(g, x, g, x), "relation is not reflexive");
        }
    }
    let mut members: Vec<(usize, usize)> = Vec::new();
    for g in 0..g_order {
        for x in 0..x_size {
            members.push((g, x));
        }
    }
    for &(g, x) in &members {
        for &(h, y) in &members {
            if related(g, x, h, y) {
                assert!(
                    related(h, y, g, x),
                    "relation is not symmetric at ({g},{x}) ~ ({h},{y})"
                );
                for &(k, z) in &members {
                    if related(h, y, k, z) {
                        assert!(
                            related(g, x, k, z),
                            "relation is not transitive through ({h},{y})"
                        );
                    }
                }
            }
        }
    }

    let mut uf = UnionFind::new(g_order * x_size);
    for &(g, x) in &members {
        for &(h, y) in &members {
            if related(g, x, h, y) {
                uf.unite(pair(g, x), pair(h, y));
            }
        }
    }
    let roots = partition_roots(p, &mut uf);
    Ok(globalization_from_partition(p, &roots))
}

/// The parallel pair on `G × (G•X)` whose coequalizer is the
/// globalization: for each `(m, (n, z))`, the first map yields
/// `(m, α(n, z))` and the second `(mn, z)`. Returned as the common domain
/// enumeration plus the two images.
#[allow(clippy::type_complexity)]
pub fn coequalizer_pair(
    p: &PartialGSet,
) -> Result<(Vec<(usize, (usize, usize))>, Vec<(usize, usize)>, Vec<(usize, usize)>), PsetError> {
    if !p.monoid().is_group() {
        return Err(PsetError::NotAGroup(String::new()));
    }
    p.check()?;
    let mut dom = Vec::new();
    let mut acted = Vec::new();
    let mut multiplied = Vec::new();
    for m in 0..p.monoid().order() {
        for &(n, z) in p.domain() {
            dom.push((m, (n, z)));
            acted.push((m, p.alpha(n, z).expect("domain pair")));
            multiplied.push((p.monoid().mul(m, n), z));
        }
    }
    Ok((dom, acted, multiplied))
}

/// Globalization as the set coequalizer of [`coequalizer_pair`]: the
/// smallest equivalence relation on `G × X` generated by its graph.
pub fn coequalizer_globalize(p: &PartialGSet) -> Result<PSetGlobalization, PsetError> {
    let (_, acted, multiplied) = coequalizer_pair(p)?;
    let x_size = p.size();
    let mut uf = UnionFind::new(p.monoid().order() * x_size);
    for (a, b) in acted.iter().zip(&multiplied) {
        uf.unite(a.0 * x_size + a.1, b.0 * x_size + b.1);
    }
    let roots = partition_roots(p, &mut uf);
    Ok(globalization_from_partition(p, &roots))
}

/// Runs both globalization routes, checks that they produce the identical
/// partition of `G × X`, and verifies the mutually inverse reindexings
/// between the explicit relation and the coequalizer pair's domain.
pub fn oracle_agreement(p: &PartialGSet) -> Result<(PSetGlobalization, PSetGlobalization), PsetError> {
    let quotient = globalize_quotient(p)?;
    let coeq = coequalizer_globalize(p)?;
    if quotient.class_of != coeq.class_of || quotient.class_reps != coeq.class_reps {
        return Err(PsetError::OracleDisagreement(format!(
            "{} classes vs {} classes with differing membership",
            quotient.size(),
            coeq.size()
        )));
    }
    verify_phi_psi(p)?;
    Ok((quotient, coeq))
}

/// The witness maps of the coequalizer comparison:
/// `φ((g,x),(h,y)) = (h, (h⁻¹g, x))` and `ψ(m,(n,z)) = ((mn,z), (m, n·z))`
/// are mutually inverse bijections between the relation and
/// `G × (G•X)`, compatible with both parallel pairs.
pub fn verify_phi_psi(p: &PartialGSet) -> Result<(), PsetError> {
    if !p.monoid().is_group() {
        return Err(PsetError::NotAGroup(String::new()));
    }
    let monoid = p.monoid();
    let mut relation = Vec::new();
    for g in 0..monoid.order() {
        for x in 0..p.size() {
            for h in 0..monoid.order() {
                let d = monoid.mul(monoid.inv(h).expect("group"), g);
                if let Some(y) = p.alpha(d, x) {
                    relation.push(((g, x), (h, y)));
                }
            }
        }
    }
    let phi = |((g, x), (h, y)): ((usize, usize), (usize, usize))| -> Result<(usize, (usize, usize)), PsetError> {
        let d = monoid.mul(monoid.inv(h).expect("group"), g);
        if p.alpha(d, x) != Some(y) {
            return Err(PsetError::PhiPsi(format!(
                "phi undefined at (({g},{x}),({h},{y}))"
            )));
        }
        Ok((h, (d, x)))
    };
    let psi = |(m, (n, z)): (usize, (usize, usize))| -> Result<((usize, usize), (usize, usize)), PsetError> {
        let nz = p
            .alpha(n, z)
            .ok_or_else(|| PsetError::PhiPsi(format!("psi undefined at ({m},({n},{z}))")))?;
        Ok(((monoid.mul(m, n), z), (m, nz)))
    };
    for &r in &relation {
        let image = phi(r)?;
        let back = psi(image)?;
        if back != r {
            return Err(PsetError::PhiPsi(format!("psi∘phi ≠ id at {r:?}")));
        }
        // the reindexing must intertwine the two parallel pairs:
        // projections of r match (μ×X)∘(G×ι) and G×α applied to phi(r)
        let (m, (n, z)) = image;
        if r.0 != (monoid.mul(m, n), z) {
            return Err(PsetError::PhiPsi(format!("first projection mismatch at {r:?}")));
        }
        if r.1 != (m, p.alpha(n, z).expect("checked")) {
            return Err(PsetError::PhiPsi(format!("second projection mismatch at {r:?}")));
        }
    }
    for m in 0..monoid.order() {
        for &(n, z) in p.domain() {
            let r = psi((m, (n, z)))?;
            let back = phi(r)?;
            if back != (m, (n, z)) {
                return Err(PsetError::PhiPsi(format!("phi∘psi ≠ id at ({m},({n},{z}))")));
            }
        }
    }
    Ok(())
}

/// Verifies that restricting the globalization to the embedded carrier
/// recovers the partial action on the nose, through the explicit bijection
/// `x ↦ embed(x)`.
pub fn restrict_globalize_roundtrip(p: &PartialGSet) -> Result<Vec<usize>, PsetError> {
    let glob = globalize_quotient(p)?;
    let subset = glob.embedded_points();
    let restricted = restrict(&glob.global, &subset)?;
    let points: Vec<usize> = subset.iter().copied().collect();
    let position: BTreeMap<usize, usize> = points.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let bijection: Vec<usize> = glob.embed.iter().map(|c| position[c]).collect();
    for g in 0..p.monoid().order() {
        for x in 0..p.size() {
            let lhs = p.alpha(g, x);
            let rhs = restricted.alpha(g, bijection[x]);
            let expected = lhs.map(|y| bijection[y]);
            if rhs != expected {
                return Err(PsetError::RoundTrip(format!(
                    "at ({}, {}): partial action gives {:?}, restricted globalization gives {:?}",
                    p.monoid().label(g),
                    p.carrier()[x],
                    lhs,
                    rhs
                )));
            }
        }
    }
    Ok(bijection)
}

/// The globalization is minimal exactly when its carrier is the orbit of
/// the embedded points.
pub fn pset_minimality(glob: &PSetGlobalization) -> bool {
    glob.global.orbit(&glob.embedded_points()).len() == glob.global.size()
}

/// Equivariant bijection search between two finite global actions of the
/// same monoid, by backtracking. Complete on these sizes.
pub fn find_gset_isomorphism(a: &GlobalGSet, b: &GlobalGSet) -> Option<Vec<usize>> {
    if a.size() != b.size() || !Arc::ptr_eq(a.monoid(), b.monoid()) && a.monoid().table() != b.monoid().table() {
        return None;
    }
    let n = a.size();
    let order = a.monoid().order();
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];

    fn consistent(a: &GlobalGSet, b: &GlobalGSet, order: usize, assignment: &[Option<usize>]) -> bool {
        for g in 0..order {
            for (x, maybe) in assignment.iter().enumerate() {
                if let Some(y) = maybe {
                    let ax = a.act(g, x);
                    if let Some(ay) = assignment[ax] {
                        if b.act(g, *y) != ay {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn search(
        a: &GlobalGSet,
        b: &GlobalGSet,
        order: usize,
        pos: usize,
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == assignment.len() {
            return true;
        }
        for candidate in 0..assignment.len() {
            if used[candidate] {
                continue;
            }
            assignment[pos] = Some(candidate);
            used[candidate] = true;
            if consistent(a, b, order, assignment)
                && search(a, b, order, pos + 1, assignment, used)
            {
                return true;
            }
            assignment[pos] = None;
            used[candidate] = false;
        }
        false
    }

    if search(a, b, order, 0, &mut assignment, &mut used) {
        Some(assignment.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests;
