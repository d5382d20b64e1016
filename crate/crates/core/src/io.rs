//! The self-describing JSON document format and workspace resolution.
//!
//! One document carries named objects of every kind; a workspace merges
//! one or more documents, resolves references, and shape-validates
//! everything. Law checking is deliberately *not* part of loading: a
//! loaded object can violate its laws, and the check commands report that
//! as a mathematical verdict rather than a parse error.
//!
//! Matrices are arrays of row arrays of scalar strings (`"p/q"` or `"n"`),
//! row-major; spaces are `{dim, labels}`.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::comod::{Coalgebra, Comodule};
use crate::exactla::{LinearMap, Matrix, VectorSpace};
use crate::gpc::{Cover, GpcError, PartialDatum};
use crate::psets::{FiniteMonoid, GlobalGSet, PartialGSet};
use crate::scalar::Scalar;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> LoadError {
    LoadError::Invalid(msg.into())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDto {
    pub dim: usize,
    pub labels: Vec<String>,
}

pub type MatrixDto = Vec<Vec<String>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoalgebraDto {
    pub space: SpaceDto,
    pub delta: MatrixDto,
    pub eps: MatrixDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComoduleDto {
    pub coalgebra_ref: String,
    pub space: SpaceDto,
    pub coaction: MatrixDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GpcDto {
    pub coalgebra_ref: String,
    pub x: SpaceDto,
    pub x_bullet_h: SpaceDto,
    pub pi: MatrixDto,
    pub rho: MatrixDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverDto {
    pub comodule_ref: String,
    pub x: SpaceDto,
    pub p: MatrixDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDto {
    pub elements: Vec<String>,
    /// `table[i][j]` is the label of `elements[i] · elements[j]`.
    pub table: Vec<Vec<String>>,
    pub unit: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionDto {
    pub group_ref: String,
    pub carrier: Vec<String>,
    /// element label → image of each carrier point, in carrier order.
    pub table: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialActionDto {
    pub group_ref: String,
    pub carrier: Vec<String>,
    pub domain_pairs: Vec<(String, String)>,
    /// `(g, x, α(g, x))` triples, one per domain pair.
    pub alpha_pairs: Vec<(String, String, String)>,
}

/// One input document. Sections are optional and merge across documents.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub version: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coalgebras: BTreeMap<String, CoalgebraDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comodules: BTreeMap<String, ComoduleDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub gpcs: BTreeMap<String, GpcDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub covers: BTreeMap<String, CoverDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub partial_actions: BTreeMap<String, PartialActionDto>,
}

impl Document {
    pub fn empty() -> Self {
        Document {
            version: FORMAT_VERSION,
            coalgebras: BTreeMap::new(),
            comodules: BTreeMap::new(),
            gpcs: BTreeMap::new(),
            covers: BTreeMap::new(),
            groups: BTreeMap::new(),
            actions: BTreeMap::new(),
            partial_actions: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| LoadError::Json(e.to_string()))?;
        if doc.version != FORMAT_VERSION {
            return Err(LoadError::Version(doc.version));
        }
        Ok(doc)
    }

    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

pub fn space_to_dto(space: &VectorSpace) -> SpaceDto {
    SpaceDto {
        dim: space.dim(),
        labels: space.labels().to_vec(),
    }
}

pub fn space_from_dto(dto: &SpaceDto, what: &str) -> Result<VectorSpace, LoadError> {
    VectorSpace::with_labels(dto.dim, dto.labels.clone())
        .map_err(|e| invalid(format!("{what}: {e}")))
}

pub fn matrix_to_dto<S: Scalar>(m: &Matrix<S>) -> MatrixDto {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m[(r, c)].to_string()).collect())
        .collect()
}

pub fn matrix_from_dto<S: Scalar + FromStr>(
    dto: &MatrixDto,
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<Matrix<S>, LoadError> {
    if dto.len() != rows || dto.iter().any(|r| r.len() != cols) {
        return Err(invalid(format!(
            "{what}: expected a {rows}x{cols} matrix, got {}x{}",
            dto.len(),
            dto.first().map_or(0, Vec::len)
        )));
    }
    let mut m = Matrix::zero(rows, cols);
    for (r, row) in dto.iter().enumerate() {
        for (c, text) in row.iter().enumerate() {
            m[(r, c)] = S::from_str(text)
                .map_err(|_| invalid(format!("{what}: invalid scalar `{text}` at ({r}, {c})")))?;
        }
    }
    Ok(m)
}

fn linear_map_from_dto<S: Scalar + FromStr>(
    dto: &MatrixDto,
    dom: VectorSpace,
    cod: VectorSpace,
    what: &str,
) -> Result<LinearMap<S>, LoadError> {
    let m = matrix_from_dto(dto, cod.dim(), dom.dim(), what)?;
    LinearMap::new(dom, cod, m).map_err(|e| invalid(format!("{what}: {e}")))
}

/// A shape-checked partial comodule entry; the epi requirement on the
/// projection is a law, deferred to [`Self::to_datum`].
#[derive(Clone)]
pub struct GpcEntry<S> {
    pub coalgebra_ref: String,
    pub coalgebra: Arc<Coalgebra<S>>,
    pub base: VectorSpace,
    pub apex: VectorSpace,
    pub coaction: LinearMap<S>,
    pub projection: LinearMap<S>,
}

impl<S: Scalar> GpcEntry<S> {
    pub fn to_datum(&self) -> Result<PartialDatum<S>, GpcError> {
        PartialDatum::new(
            self.coalgebra.clone(),
            self.base.clone(),
            self.apex.clone(),
            self.coaction.clone(),
            self.projection.clone(),
        )
    }
}

/// A shape-checked cover entry; the epi requirement is deferred to
/// [`Self::to_cover`].
#[derive(Clone)]
pub struct CoverEntry<S> {
    pub comodule_ref: String,
    pub comodule: Comodule<S>,
    pub base: VectorSpace,
    pub projection: LinearMap<S>,
}

impl<S: Scalar> CoverEntry<S> {
    pub fn to_cover(&self) -> Result<Cover<S>, GpcError> {
        Cover::new(
            self.comodule.clone(),
            self.base.clone(),
            self.projection.clone(),
        )
    }
}

/// All named objects from the merged input documents, shape-validated and
/// with every reference resolved.
pub struct Workspace<S> {
    pub coalgebras: BTreeMap<String, Arc<Coalgebra<S>>>,
    pub comodules: BTreeMap<String, Comodule<S>>,
    pub comodule_refs: BTreeMap<String, String>,
    pub gpcs: BTreeMap<String, GpcEntry<S>>,
    pub covers: BTreeMap<String, CoverEntry<S>>,
    pub groups: BTreeMap<String, Arc<FiniteMonoid>>,
    pub actions: BTreeMap<String, GlobalGSet>,
    pub partial_actions: BTreeMap<String, PartialGSet>,
}

fn merge_section<T: Clone>(
    into: &mut BTreeMap<String, T>,
    from: &BTreeMap<String, T>,
    kind: &str,
) -> Result<(), LoadError> {
    for (name, value) in from {
        if into.insert(name.clone(), value.clone()).is_some() {
            return Err(invalid(format!("duplicate {kind} `{name}`")));
        }
    }
    Ok(())
}

impl<S: Scalar + FromStr> Workspace<S> {
    pub fn from_documents(documents: &[Document]) -> Result<Self, LoadError> {
        let mut merged = Document::empty();
        for doc in documents {
            merge_section(&mut merged.coalgebras, &doc.coalgebras, "coalgebra")?;
            merge_section(&mut merged.comodules, &doc.comodules, "comodule")?;
            merge_section(&mut merged.gpcs, &doc.gpcs, "gpc")?;
            merge_section(&mut merged.covers, &doc.covers, "cover")?;
            merge_section(&mut merged.groups, &doc.groups, "group")?;
            merge_section(&mut merged.actions, &doc.actions, "action")?;
            merge_section(&mut merged.partial_actions, &doc.partial_actions, "partial action")?;
        }

        let mut coalgebras = BTreeMap::new();
        for (name, dto) in &merged.coalgebras {
            let what = format!("coalgebra `{name}`");
            let space = space_from_dto(&dto.space, &what)?;
            let comult = linear_map_from_dto(
                &dto.delta,
                space.clone(),
                space.tensor(&space),
                &format!("{what} delta"),
            )?;
            let counit = linear_map_from_dto(
                &dto.eps,
                space.clone(),
                VectorSpace::line(),
                &format!("{what} eps"),
            )?;
            let coalgebra = Coalgebra::new(space, comult, counit)
                .map_err(|e| invalid(format!("{what}: {e}")))?;
            coalgebras.insert(name.clone(), Arc::new(coalgebra));
        }

        let mut comodules = BTreeMap::new();
        let mut comodule_refs = BTreeMap::new();
        for (name, dto) in &merged.comodules {
            let what = format!("comodule `{name}`");
            let coalgebra = coalgebras
                .get(&dto.coalgebra_ref)
                .ok_or_else(|| invalid(format!("{what}: unresolved coalgebra `{}`", dto.coalgebra_ref)))?;
            let space = space_from_dto(&dto.space, &what)?;
            let coaction = linear_map_from_dto(
                &dto.coaction,
                space.clone(),
                space.tensor(coalgebra.space()),
                &format!("{what} coaction"),
            )?;
            let comodule = Comodule::new(coalgebra.clone(), space, coaction)
                .map_err(|e| invalid(format!("{what}: {e}")))?;
            comodules.insert(name.clone(), comodule);
            comodule_refs.insert(name.clone(), dto.coalgebra_ref.clone());
        }

        let mut gpcs = BTreeMap::new();
        for (name, dto) in &merged.gpcs {
            let what = format!("gpc `{name}`");
            let coalgebra = coalgebras
                .get(&dto.coalgebra_ref)
                .ok_or_else(|| invalid(format!("{what}: unresolved coalgebra `{}`", dto.coalgebra_ref)))?;
            let base = space_from_dto(&dto.x, &format!("{what} x"))?;
            let apex = space_from_dto(&dto.x_bullet_h, &format!("{what} x_bullet_h"))?;
            let coaction =
                linear_map_from_dto(&dto.rho, base.clone(), apex.clone(), &format!("{what} rho"))?;
            let projection = linear_map_from_dto(
                &dto.pi,
                base.tensor(coalgebra.space()),
                apex.clone(),
                &format!("{what} pi"),
            )?;
            gpcs.insert(
                name.clone(),
                GpcEntry {
                    coalgebra_ref: dto.coalgebra_ref.clone(),
                    coalgebra: coalgebra.clone(),
                    base,
                    apex,
                    coaction,
                    projection,
                },
            );
        }

        let mut covers = BTreeMap::new();
        for (name, dto) in &merged.covers {
            let what = format!("cover `{name}`");
            let comodule = comodules
                .get(&dto.comodule_ref)
                .ok_or_else(|| invalid(format!("{what}: unresolved comodule `{}`", dto.comodule_ref)))?;
            let base = space_from_dto(&dto.x, &format!("{what} x"))?;
            let projection = linear_map_from_dto(
                &dto.p,
                comodule.space().clone(),
                base.clone(),
                &format!("{what} p"),
            )?;
            covers.insert(
                name.clone(),
                CoverEntry {
                    comodule_ref: dto.comodule_ref.clone(),
                    comodule: comodule.clone(),
                    base,
                    projection,
                },
            );
        }

        let mut groups = BTreeMap::new();
        for (name, dto) in &merged.groups {
            let what = format!("group `{name}`");
            let index_of: BTreeMap<&String, usize> =
                dto.elements.iter().enumerate().map(|(i, l)| (l, i)).collect();
            if index_of.len() != dto.elements.len() {
                return Err(invalid(format!("{what}: duplicate element labels")));
            }
            let lookup = |label: &String| {
                index_of
                    .get(label)
                    .copied()
                    .ok_or_else(|| invalid(format!("{what}: unknown element `{label}`")))
            };
            if dto.table.len() != dto.elements.len()
                || dto.table.iter().any(|r| r.len() != dto.elements.len())
            {
                return Err(invalid(format!("{what}: table shape mismatch")));
            }
            let mut table = Vec::with_capacity(dto.elements.len());
            for row in &dto.table {
                table.push(row.iter().map(lookup).collect::<Result<Vec<_>, _>>()?);
            }
            let unit = lookup(&dto.unit)?;
            let monoid = FiniteMonoid::new(dto.elements.clone(), table, unit)
                .map_err(|e| invalid(format!("{what}: {e}")))?;
            groups.insert(name.clone(), Arc::new(monoid));
        }

        let mut actions = BTreeMap::new();
        for (name, dto) in &merged.actions {
            let what = format!("action `{name}`");
            let group = groups
                .get(&dto.group_ref)
                .ok_or_else(|| invalid(format!("{what}: unresolved group `{}`", dto.group_ref)))?;
            let carrier_index: BTreeMap<&String, usize> =
                dto.carrier.iter().enumerate().map(|(i, l)| (l, i)).collect();
            let mut action = Vec::with_capacity(group.order());
            for g in 0..group.order() {
                let row_labels = dto.table.get(group.label(g)).ok_or_else(|| {
                    invalid(format!("{what}: missing row for element `{}`", group.label(g)))
                })?;
                if row_labels.len() != dto.carrier.len() {
                    return Err(invalid(format!("{what}: row length mismatch")));
                }
                let mut row = Vec::with_capacity(dto.carrier.len());
                for label in row_labels {
                    row.push(*carrier_index.get(label).ok_or_else(|| {
                        invalid(format!("{what}: unknown carrier point `{label}`"))
                    })?);
                }
                action.push(row);
            }
            if dto.table.len() != group.order() {
                return Err(invalid(format!("{what}: spurious rows in the action table")));
            }
            let gset = GlobalGSet::new(group.clone(), dto.carrier.clone(), action)
                .map_err(|e| invalid(format!("{what}: {e}")))?;
            actions.insert(name.clone(), gset);
        }

        let mut partial_actions = BTreeMap::new();
        for (name, dto) in &merged.partial_actions {
            let what = format!("partial action `{name}`");
            let group = groups
                .get(&dto.group_ref)
                .ok_or_else(|| invalid(format!("{what}: unresolved group `{}`", dto.group_ref)))?;
            let element_index: BTreeMap<&String, usize> = (0..group.order())
                .map(|i| (&group.elements()[i], i))
                .collect();
            let carrier_index: BTreeMap<&String, usize> =
                dto.carrier.iter().enumerate().map(|(i, l)| (l, i)).collect();
            let mut domain = std::collections::BTreeSet::new();
            for (g, x) in &dto.domain_pairs {
                let gi = *element_index
                    .get(g)
                    .ok_or_else(|| invalid(format!("{what}: unknown element `{g}`")))?;
                let xi = *carrier_index
                    .get(x)
                    .ok_or_else(|| invalid(format!("{what}: unknown carrier point `{x}`")))?;
                domain.insert((gi, xi));
            }
            let mut map = BTreeMap::new();
            for (g, x, y) in &dto.alpha_pairs {
                let gi = *element_index
                    .get(g)
                    .ok_or_else(|| invalid(format!("{what}: unknown element `{g}`")))?;
                let xi = *carrier_index
                    .get(x)
                    .ok_or_else(|| invalid(format!("{what}: unknown carrier point `{x}`")))?;
                let yi = *carrier_index
                    .get(y)
                    .ok_or_else(|| invalid(format!("{what}: unknown carrier point `{y}`")))?;
                map.insert((gi, xi), yi);
            }
            let partial = PartialGSet::new(group.clone(), dto.carrier.clone(), domain, map)
                .map_err(|e| invalid(format!("{what}: {e}")))?;
            partial_actions.insert(name.clone(), partial);
        }

        Ok(Workspace {
            coalgebras,
            comodules,
            comodule_refs,
            gpcs,
            covers,
            groups,
            actions,
            partial_actions,
        })
    }
}

pub fn coalgebra_to_dto<S: Scalar>(coalgebra: &Coalgebra<S>) -> CoalgebraDto {
    CoalgebraDto {
        space: space_to_dto(coalgebra.space()),
        delta: matrix_to_dto(coalgebra.comult().matrix()),
        eps: matrix_to_dto(coalgebra.counit().matrix()),
    }
}

pub fn comodule_to_dto<S: Scalar>(coalgebra_ref: &str, comodule: &Comodule<S>) -> ComoduleDto {
    ComoduleDto {
        coalgebra_ref: coalgebra_ref.to_string(),
        space: space_to_dto(comodule.space()),
        coaction: matrix_to_dto(comodule.coaction().matrix()),
    }
}

pub fn gpc_to_dto<S: Scalar>(coalgebra_ref: &str, datum: &PartialDatum<S>) -> GpcDto {
    GpcDto {
        coalgebra_ref: coalgebra_ref.to_string(),
        x: space_to_dto(datum.base()),
        x_bullet_h: space_to_dto(datum.apex()),
        pi: matrix_to_dto(datum.projection().matrix()),
        rho: matrix_to_dto(datum.coaction().matrix()),
    }
}

pub fn cover_to_dto<S: Scalar>(comodule_ref: &str, cover: &Cover<S>) -> CoverDto {
    CoverDto {
        comodule_ref: comodule_ref.to_string(),
        x: space_to_dto(cover.base()),
        p: matrix_to_dto(cover.projection().matrix()),
    }
}

pub fn group_to_dto(group: &FiniteMonoid) -> GroupDto {
    GroupDto {
        elements: group.elements().to_vec(),
        table: group
            .table()
            .iter()
            .map(|row| row.iter().map(|&v| group.label(v).to_string()).collect())
            .collect(),
        unit: group.label(group.unit()).to_string(),
    }
}

pub fn action_to_dto(group_ref: &str, action: &GlobalGSet) -> ActionDto {
    ActionDto {
        group_ref: group_ref.to_string(),
        carrier: action.carrier().to_vec(),
        table: (0..action.monoid().order())
            .map(|g| {
                (
                    action.monoid().label(g).to_string(),
                    (0..action.size())
                        .map(|y| action.carrier()[action.act(g, y)].clone())
                        .collect(),
                )
            })
            .collect(),
    }
}

pub fn partial_action_to_dto(group_ref: &str, partial: &PartialGSet) -> PartialActionDto {
    PartialActionDto {
        group_ref: group_ref.to_string(),
        carrier: partial.carrier().to_vec(),
        domain_pairs: partial
            .domain()
            .iter()
            .map(|&(g, x)| {
                (
                    partial.monoid().label(g).to_string(),
                    partial.carrier()[x].clone(),
                )
            })
            .collect(),
        alpha_pairs: partial
            .domain()
            .iter()
            .map(|&(g, x)| {
                (
                    partial.monoid().label(g).to_string(),
                    partial.carrier()[x].clone(),
                    partial.carrier()[partial.alpha(g, x).expect("domain pair")].clone(),
                )
            })
            .collect(),
    }
}

/// The shipped fixture corpus as serializable documents, one per file
/// name. The `gen_fixtures` example writes these under `fixtures/`; a
/// test keeps the files and this function in sync.
pub fn fixture_documents<S: Scalar>() -> Vec<(&'static str, Document)> {
    use crate::exactla::{LinearMap, VectorSpace};
    use crate::fixtures;

    let mut core = Document::empty();
    for (name, coalgebra) in fixtures::fixture_coalgebras::<S>() {
        core.coalgebras
            .insert(name.to_string(), coalgebra_to_dto(&coalgebra));
    }
    let coalgebra_name = |c: &Arc<Coalgebra<S>>| -> &'static str {
        fixtures::fixture_coalgebras::<S>()
            .into_iter()
            .find(|(_, fixture)| fixture.same_as(c))
            .map(|(name, _)| name)
            .expect("fixture comodules live over fixture coalgebras")
    };
    let comodules = fixtures::fixture_comodules::<S>();
    for (name, comodule) in &comodules {
        core.comodules.insert(
            name.to_string(),
            comodule_to_dto(coalgebra_name(comodule.coalgebra()), comodule),
        );
    }
    let comodule = |name: &str| {
        comodules
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| c.clone())
            .expect("fixture comodule exists")
    };

    // partial comodule data: the trivial structures, the induced
    // three-dimensional example, and two data that violate one axiom each
    let qc2 = fixtures::qc2::<S>();
    let qc3 = fixtures::qc3::<S>();
    let trivial_v1 = crate::gpc::trivial_gpc(&VectorSpace::generated(1, "v"), &qc2)
        .expect("nonzero coalgebra");
    core.gpcs
        .insert("trivial_v1".into(), gpc_to_dto("QC2", trivial_v1.datum()));
    let trivial_v2 = crate::gpc::trivial_gpc(&VectorSpace::generated(2, "v"), &qc3)
        .expect("nonzero coalgebra");
    core.gpcs
        .insert("trivial_v2_qc3".into(), gpc_to_dto("QC3", trivial_v2.datum()));

    let graded3 = comodule("graded3");
    let base = VectorSpace::new(vec!["e1".into(), "e2".into()]).expect("labels");
    let p = LinearMap::new(
        graded3.space().clone(),
        base.clone(),
        Matrix::from_int_rows(&[&[1, 0, 1], &[0, 1, 0]]),
    )
    .expect("shape");
    let graded3_cover = crate::gpc::Cover::new(graded3, base, p).expect("epi");
    let (induced3, _) = crate::gpc::induce(&graded3_cover);
    core.gpcs
        .insert("induced3".into(), gpc_to_dto("QC2", induced3.datum()));
    core.covers.insert(
        "graded3".into(),
        cover_to_dto("graded3", &graded3_cover),
    );

    // projection killing a counit-visible line: fails the counit triangle
    let base2 = VectorSpace::generated(2, "x");
    let apex3 = VectorSpace::generated(3, "c");
    let bad_counit = crate::gpc::PartialDatum::new(
        qc2.clone(),
        base2.clone(),
        apex3.clone(),
        LinearMap::zero(base2.clone(), apex3.clone()),
        LinearMap::new(
            base2.tensor(qc2.space()),
            apex3,
            Matrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]),
        )
        .expect("shape"),
    )
    .expect("projection is epi");
    core.gpcs
        .insert("bad_counit".into(), gpc_to_dto("QC2", &bad_counit));

    // counital but non-coassociative partial coaction: fails the
    // comparison square
    let line = VectorSpace::generated(1, "x");
    let line_apex = line.tensor(qc2.space());
    let bad_square = crate::gpc::PartialDatum::new(
        qc2.clone(),
        line.clone(),
        line_apex.clone(),
        LinearMap::new(
            line,
            line_apex.clone(),
            Matrix::from_int_rows(&[&[2], &[-1]]),
        )
        .expect("shape"),
        LinearMap::identity(&line_apex),
    )
    .expect("identity is epi");
    core.gpcs
        .insert("bad_square".into(), gpc_to_dto("QC2", &bad_square));

    // covers: the graded plane onto a point, the free cover of its base,
    // and a non-proper fold of two identical summands
    let graded2 = comodule("graded2");
    let point = VectorSpace::generated(1, "x");
    let sum = LinearMap::new(
        graded2.space().clone(),
        point.clone(),
        Matrix::from_int_rows(&[&[1, 1]]),
    )
    .expect("shape");
    core.covers.insert(
        "graded2_to_point".into(),
        cover_to_dto(
            "graded2",
            &crate::gpc::Cover::new(graded2, point, sum).expect("epi"),
        ),
    );
    let free2 = comodule("free2_qc2");
    let u = VectorSpace::new(vec!["u1".into(), "u2".into()]).expect("labels");
    let counit_cover = crate::gpc::Cover::new(
        free2.clone(),
        u.clone(),
        qc2.counit_on(&u)
            .with_dom(free2.space().clone()),
    )
    .expect("epi");
    core.covers
        .insert("free2".into(), cover_to_dto("free2_qc2", &counit_cover));
    let doubled = comodule("graded2x2");
    let fold_base = VectorSpace::generated(2, "x");
    let fold = LinearMap::new(
        doubled.space().clone(),
        fold_base.clone(),
        Matrix::from_int_rows(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]),
    )
    .expect("shape");
    core.covers.insert(
        "doubled".into(),
        cover_to_dto(
            "graded2x2",
            &crate::gpc::Cover::new(doubled, fold_base, fold).expect("epi"),
        ),
    );

    let mut sets = Document::empty();
    for (name, group) in fixtures::fixture_groups() {
        sets.groups.insert(name.to_string(), group_to_dto(&group));
    }
    for (name, action) in fixtures::fixture_actions() {
        let group_ref = fixtures::fixture_groups()
            .into_iter()
            .find(|(_, g)| g.table() == action.monoid().table())
            .map(|(n, _)| n)
            .expect("fixture actions use fixture groups");
        sets.actions
            .insert(name.to_string(), action_to_dto(group_ref, &action));
    }
    for (name, partial) in fixtures::fixture_partial_actions() {
        let group_ref = fixtures::fixture_groups()
            .into_iter()
            .find(|(_, g)| g.table() == partial.monoid().table())
            .map(|(n, _)| n)
            .expect("fixture partial actions use fixture groups");
        sets.partial_actions
            .insert(name.to_string(), partial_action_to_dto(group_ref, &partial));
    }

    vec![("core.json", core), ("sets.json", sets)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn document_round_trip() {
        let mut doc = Document::empty();
        doc.coalgebras.insert(
            "QC2".into(),
            coalgebra_to_dto(&crate::fixtures::qc2::<Rational>()),
        );
        let text = doc.to_pretty_json();
        let parsed = Document::parse(&text).unwrap();
        let ws = Workspace::<Rational>::from_documents(&[parsed]).unwrap();
        assert!(ws.coalgebras["QC2"].check().is_ok());
    }

    #[test]
    fn version_mismatch_is_rejected() {
        let text = r#"{"version": 99}"#;
        assert!(matches!(Document::parse(text), Err(LoadError::Version(99))));
    }

    #[test]
    fn bad_matrix_shape_is_invalid() {
        let text = r#"{
            "version": 1,
            "coalgebras": {
                "bad": {
                    "space": {"dim": 2, "labels": ["a", "b"]},
                    "delta": [["1", "0"]],
                    "eps": [["1", "1"]]
                }
            }
        }"#;
        let doc = Document::parse(text).unwrap();
        assert!(matches!(
            Workspace::<Rational>::from_documents(&[doc]),
            Err(LoadError::Invalid(_))
        ));
    }

    #[test]
    fn unresolved_reference_is_invalid() {
        let text = r#"{
            "version": 1,
            "comodules": {
                "orphan": {
                    "coalgebra_ref": "missing",
                    "space": {"dim": 1, "labels": ["y"]},
                    "coaction": [["1"], ["0"]]
                }
            }
        }"#;
        let doc = Document::parse(text).unwrap();
        let err = match Workspace::<Rational>::from_documents(&[doc]) {
            Err(e) => e,
            Ok(_) => panic!("unresolved reference must be rejected"),
        };
        assert!(err.to_string().contains("unresolved"));
    }
}
