//! Cohomology-ring models and inflation systems over a target algebra.
//!
//! Groups never appear; a quotient `G_i` is represented by a model of its
//! cohomology ring and a graded map standing in for inflation.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{is_zero, Fp};
use crate::filtered::{build_filtered_system, check_asymptotic_uk, AukCondition, AukReport, AukVerdict};
use crate::koszul::Strategy;
use crate::linalg::{kernel, Matrix, Subspace};
use crate::map::{tensor_square_apply, GradedMap};
use crate::model::{GradedElement, ModelRef};
use crate::presentation::QuadraticPresentation;
use crate::subalgebra::canonical_subalgebra;

/// `Λ(V)`: squares and symmetric commutators, for every p.
pub fn exterior_presentation(n: usize, field: Fp) -> QuadraticPresentation {
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut v = vec![0u16; n * n];
            v[i * n + j] = 1;
            v[j * n + i] = 1;
            rows.push(v);
        }
    }
    let relations = Subspace::from_rows_unchecked(field, n * n, rows);
    QuadraticPresentation::with_default_labels(field, n, relations).expect("valid")
}

/// `R = V⊗V`: nothing survives above degree 1.
pub fn cd1_presentation(n: usize, field: Fp) -> QuadraticPresentation {
    QuadraticPresentation::with_default_labels(field, n, Subspace::full(field, n * n)).expect("valid")
}

/// Evidence attached to a failed stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    /// An element of the target (`item = None`) or of an item's algebra.
    Element { item: Option<usize>, element: GradedElement },
    /// One component per item, all in the same degree.
    Components { components: Vec<GradedElement> },
    /// Two items with no common upper bound.
    Pair { i: usize, j: usize },
    /// A vector of `V⊗V` for the target generators.
    Tensor { coords: Vec<u16> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Stage {
    pub fn pass(name: &str) -> Self {
        Stage {
            name: name.into(),
            passed: true,
            degree: None,
            witness: None,
        }
    }

    pub fn fail(name: &str, degree: Option<usize>, witness: Option<Witness>) -> Self {
        Stage {
            name: name.into(),
            passed: false,
            degree,
            witness,
        }
    }
}

#[derive(Clone, Debug)]
pub struct InflationItem {
    pub name: String,
    pub map: GradedMap,
}

#[derive(Clone, Debug)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub map: GradedMap,
}

/// Items mapping into a common target, ordered by factorization maps.
#[derive(Clone, Debug)]
pub struct InflationSystem {
    target: ModelRef,
    items: Vec<InflationItem>,
    transitions: Vec<Transition>,
}

impl InflationSystem {
    /// Validates targets and triangle commutation on degree-1 bases, then
    /// closes the order under composition.
    pub fn new(target: ModelRef, items: Vec<InflationItem>, transitions: Vec<Transition>) -> Result<Self> {
        for (k, it) in items.iter().enumerate() {
            if !it.map.target().same_as(&target) {
                return Err(Error::MalformedSystem(format!(
                    "item {k} `{}` does not map into the target",
                    it.name
                )));
            }
        }
        let mut closed: Vec<Transition> = Vec::new();
        for t in transitions {
            let (Some(a), Some(b)) = (items.get(t.from), items.get(t.to)) else {
                return Err(Error::MalformedSystem(format!(
                    "transition {} -> {} names a missing item",
                    t.from, t.to
                )));
            };
            if t.from == t.to {
                continue;
            }
            if !t.map.source().same_as(a.map.source()) || !t.map.target().same_as(b.map.source()) {
                return Err(Error::MalformedSystem(format!(
                    "transition {} -> {} has the wrong source or target",
                    t.from, t.to
                )));
            }
            let composite = b.map.degree1_matrix().mul(t.map.degree1_matrix())?;
            if &composite != a.map.degree1_matrix() {
                return Err(Error::MalformedSystem(format!(
                    "triangle {} -> {} -> target does not commute",
                    t.from, t.to
                )));
            }
            if !closed.iter().any(|c| c.from == t.from && c.to == t.to) {
                closed.push(t);
            }
        }
        loop {
            let mut added = Vec::new();
            for s in &closed {
                for t in closed.iter().filter(|t| t.from == s.to && t.to != s.from) {
                    let exists = |c: &Transition| c.from == s.from && c.to == t.to;
                    if !closed.iter().any(exists) && !added.iter().any(exists) {
                        added.push(Transition {
                            from: s.from,
                            to: t.to,
                            map: s.map.then(&t.map)?,
                        });
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            closed.extend(added);
        }
        closed.sort_by_key(|t| (t.from, t.to));
        Ok(InflationSystem {
            target,
            items,
            transitions: closed,
        })
    }

    pub fn target(&self) -> &ModelRef {
        &self.target
    }

    pub fn items(&self) -> &[InflationItem] {
        &self.items
    }

    /// The order after transitive closure, without identities.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        i == j || self.transitions.iter().any(|t| t.from == i && t.to == j)
    }

    pub fn upper_bound(&self, i: usize, j: usize) -> Option<usize> {
        (0..self.items.len()).find(|&k| self.precedes(i, k) && self.precedes(j, k))
    }

    /// First pair without a common upper bound.
    pub fn undirected_pair(&self) -> Option<(usize, usize)> {
        let m = self.items.len();
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| self.upper_bound(i, j).is_none())
    }

    fn top_degree(&self) -> usize {
        self.items
            .iter()
            .map(|it| it.map.top_degree())
            .min()
            .unwrap_or(self.target.cap())
            .min(self.target.cap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimitReport {
    pub cap: usize,
    pub passed: bool,
    pub hypotheses: Vec<Stage>,
    pub conclusions: Vec<Stage>,
}

impl ColimitReport {
    pub fn first_failure(&self) -> Option<&Stage> {
        self.hypotheses.iter().chain(&self.conclusions).find(|s| !s.passed)
    }
}

fn unit_outside(s: &Subspace) -> Vec<u16> {
    let mut v = vec![0u16; s.ambient_dim()];
    v[s.complement_columns()[0]] = 1;
    v
}

fn generated_in_degree_one(target: &ModelRef, cap: usize) -> Stage {
    for d in 2..=cap {
        let mut rows = Vec::new();
        for g in 0..target.num_generators() {
            let m = target.right_mult_matrix(d - 1, &target.generator(g).coords);
            rows.extend((0..m.cols()).map(|j| m.column(j)).filter(|c| !is_zero(c)));
        }
        let span = Subspace::from_rows_unchecked(target.field(), target.dim(d), rows);
        if !span.is_full() {
            let element = GradedElement {
                degree: d,
                coords: unit_outside(&span),
            };
            return Stage::fail("generated_in_degree_1", Some(d), Some(Witness::Element { item: None, element }));
        }
    }
    Stage::pass("generated_in_degree_1")
}

fn injective_in_degree(system: &InflationSystem, d: usize) -> Stage {
    let name = format!("injective_degree_{d}");
    for (k, it) in system.items.iter().enumerate() {
        if let Some(element) = it.map.kernel_witness(d) {
            return Stage::fail(&name, Some(d), Some(Witness::Element { item: Some(k), element }));
        }
    }
    Stage::pass(&name)
}

/// Kernel of `⊕ A^i_d → A_d` modulo the transition relations; zero iff the
/// colimit maps injectively in degree `d`.
fn colimit_kernel_witness(system: &InflationSystem, d: usize) -> Option<Vec<GradedElement>> {
    let field = system.target.field();
    let dims: Vec<usize> = system.items.iter().map(|it| it.map.source().dim(d)).collect();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &x| {
            let o = *acc;
            *acc += x;
            Some(o)
        })
        .collect();
    let total: usize = dims.iter().sum();
    let mut columns = Vec::with_capacity(total);
    for it in &system.items {
        let piece = it.map.piece(d);
        columns.extend((0..piece.cols()).map(|j| piece.column(j)));
    }
    let f = Matrix::from_columns(field, system.target.dim(d), &columns).expect("consistent dimensions");
    let ker = kernel(&f);
    let mut rel_rows = Vec::new();
    for t in &system.transitions {
        let piece = t.map.piece(d);
        for b in 0..dims[t.from] {
            let mut v = vec![0u16; total];
            v[offsets[t.from] + b] = 1;
            for (r, &c) in piece.column(b).iter().enumerate() {
                v[offsets[t.to] + r] = field.sub(v[offsets[t.to] + r], c);
            }
            rel_rows.push(v);
        }
    }
    let relations = Subspace::from_rows_unchecked(field, total, rel_rows);
    let w = ker.first_outside(&relations)?;
    Some(
        dims.iter()
            .zip(&offsets)
            .map(|(&dim, &o)| GradedElement {
                degree: d,
                coords: w[o..o + dim].to_vec(),
            })
            .collect(),
    )
}

/// Checks the hypotheses (target generated in degree 1; every item map
/// injective in degrees 1 and 2; the order directed) and the conclusions
/// (surjectivity through `cap`; colimit isomorphic in degrees ≤ 2).
pub fn check_colimit_low_degree(system: &InflationSystem, cap: usize) -> Result<ColimitReport> {
    if cap < 2 || cap > system.top_degree() {
        return Err(Error::CapTooSmall(format!(
            "colimit cap must lie in 2..={}, got {cap}",
            system.top_degree()
        )));
    }
    let target = &system.target;
    let mut hypotheses = vec![
        generated_in_degree_one(target, cap),
        injective_in_degree(system, 1),
        injective_in_degree(system, 2),
    ];
    hypotheses.push(match system.undirected_pair() {
        None => Stage::pass("directed"),
        Some((i, j)) => Stage::fail("directed", None, Some(Witness::Pair { i, j })),
    });

    let mut conclusions = Vec::new();
    let mut surjective = Stage::pass("surjective");
    for d in 0..=cap {
        let mut union = Subspace::zero(target.field(), target.dim(d));
        for it in &system.items {
            union = union.sum(&it.map.image_in_degree(d))?;
        }
        if !union.is_full() {
            let element = GradedElement {
                degree: d,
                coords: unit_outside(&union),
            };
            surjective = Stage::fail("surjective", Some(d), Some(Witness::Element { item: None, element }));
            break;
        }
    }
    let low_surjective = surjective.passed || surjective.degree.is_some_and(|d| d > 2);
    conclusions.push(surjective);
    let mut injective = Stage::pass("colimit_injective_degree_le_2");
    for d in 0..=2 {
        if let Some(components) = colimit_kernel_witness(system, d) {
            injective = Stage::fail("colimit_injective_degree_le_2", Some(d), Some(Witness::Components { components }));
            break;
        }
    }
    let iso = if injective.passed && low_surjective {
        Stage::pass("isomorphism_degree_le_2")
    } else {
        Stage::fail("isomorphism_degree_le_2", injective.degree, None)
    };
    conclusions.push(injective);
    conclusions.push(iso);

    let passed = hypotheses.iter().chain(&conclusions).all(|s| s.passed);
    Ok(ColimitReport {
        cap,
        passed,
        hypotheses,
        conclusions,
    })
}

/// Which hypothesis of the Galois criterion a failure instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaloisHypothesis {
    /// Target generated by degree 1.
    #[serde(rename = "i")]
    I,
    /// Item maps injective in degrees 1 and 2.
    #[serde(rename = "ii")]
    Ii,
    /// Item algebras universally Koszul.
    #[serde(rename = "iii")]
    Iii,
    /// Directedness and coverage of the system.
    Cofinality,
    /// The item is not isomorphic to the subalgebra its degree-1 image generates.
    Identification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaloisVerdict {
    #[serde(rename = "AUK_VerifiedUpTo")]
    VerifiedUpTo(usize),
    Fails {
        hypothesis: GaloisHypothesis,
        stage: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        item: Option<usize>,
    },
}

impl GaloisVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, GaloisVerdict::VerifiedUpTo(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    pub item: String,
    pub w_dim: usize,
    pub item_relation_dim: usize,
    pub subalgebra_relation_dim: usize,
    /// The degree-1 map carries the item relations onto `R ∩ (W⊗W)`.
    pub relations_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisReport {
    pub verdict: GaloisVerdict,
    pub colimit: ColimitReport,
    pub identifications: Vec<Identification>,
    pub auk: Option<AukReport>,
    pub assumptions: Vec<String>,
}

const ASSUMPTIONS: [&str; 2] = [
    "the quotient system is cofinal and directed with trivial intersection; groups are not represented, so this is taken on trust",
    "each item model is the cohomology ring of its quotient and each item map is inflation",
];

/// Relation space of the source pushed into the target's `V⊗V`.
fn pushed_relations(map: &GradedMap) -> Subspace {
    let target = map.target();
    let n = target.num_generators();
    let rows = map
        .source()
        .presentation()
        .relations()
        .basis()
        .iter()
        .map(|r| tensor_square_apply(map.degree1_matrix(), r))
        .collect();
    Subspace::from_rows_unchecked(target.field(), n * n, rows)
}

/// Low-degree colimit check, then per-item identification with `B_{W_i}`,
/// then the asymptotic check on the system of degree-1 images.
pub fn check_galois_pipeline(
    system: &InflationSystem,
    strategy: Strategy,
    colon_cap: usize,
    union_cap: usize,
    budget: &Budget,
) -> Result<GaloisReport> {
    let assumptions = ASSUMPTIONS.iter().map(|s| s.to_string()).collect();
    let colimit = check_colimit_low_degree(system, union_cap)?;
    if let Some(stage) = colimit.first_failure() {
        let hypothesis = match stage.name.as_str() {
            "generated_in_degree_1" => GaloisHypothesis::I,
            "injective_degree_1" | "injective_degree_2" => GaloisHypothesis::Ii,
            _ => GaloisHypothesis::Cofinality,
        };
        let item = match &stage.witness {
            Some(Witness::Element { item, .. }) => *item,
            _ => None,
        };
        let verdict = GaloisVerdict::Fails {
            hypothesis,
            stage: stage.name.clone(),
            item,
        };
        return Ok(GaloisReport {
            verdict,
            colimit,
            identifications: Vec::new(),
            auk: None,
            assumptions,
        });
    }
    let target = system.target();
    let mut identifications = Vec::with_capacity(system.items.len());
    let mut spaces = Vec::with_capacity(system.items.len());
    for it in &system.items {
        let w = it.map.image_in_degree(1);
        let b = canonical_subalgebra(target, &w)?;
        let item_relations = pushed_relations(&it.map);
        identifications.push(Identification {
            item: it.name.clone(),
            w_dim: w.dim(),
            item_relation_dim: it.map.source().presentation().relations().dim(),
            subalgebra_relation_dim: b.relation_dim(),
            relations_match: item_relations == b.relations_in_parent(),
        });
        spaces.push(w);
    }
    if let Some(k) = identifications
        .iter()
        .position(|id| !id.relations_match || id.item_relation_dim != id.subalgebra_relation_dim)
    {
        return Ok(GaloisReport {
            verdict: GaloisVerdict::Fails {
                hypothesis: GaloisHypothesis::Ii,
                stage: "relations_identification".into(),
                item: Some(k),
            },
            colimit,
            identifications,
            auk: None,
            assumptions,
        });
    }
    let filtered = build_filtered_system(target, &spaces, false, budget)?;
    let auk = check_asymptotic_uk(target, &filtered, strategy, colon_cap, union_cap, budget)?;
    let verdict = match &auk.verdict {
        AukVerdict::VerifiedUpTo(c) => GaloisVerdict::VerifiedUpTo(*c),
        AukVerdict::Fails { condition, detail } => {
            let (hypothesis, stage) = match condition {
                AukCondition::I => (GaloisHypothesis::Identification, "subalgebra_embedding"),
                AukCondition::Ii => (GaloisHypothesis::Iii, "item_uk"),
                AukCondition::Iii => (GaloisHypothesis::Cofinality, "union"),
                AukCondition::Iv => (GaloisHypothesis::Cofinality, "coverage"),
            };
            let item = match detail {
                crate::filtered::AukFailure::NotQuadratic { item, .. } | crate::filtered::AukFailure::ItemNotUk { item, .. } => Some(*item),
                _ => None,
            };
            GaloisVerdict::Fails {
                hypothesis,
                stage: stage.into(),
                item,
            }
        }
    };
    Ok(GaloisReport {
        verdict,
        colimit,
        identifications,
        auk: Some(auk),
        assumptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GradedAlgebraModel;

    fn build(p: QuadraticPresentation, cap: usize) -> ModelRef {
        GradedAlgebraModel::build_ref(p, cap, &Budget::default()).unwrap()
    }

    /// `n x k` matrix sending generator `i` to generator `i`.
    fn coordinate(n: usize, k: usize) -> Matrix {
        let mut m = Matrix::zeros(Fp::F2, n, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    fn chain(make: fn(usize, Fp) -> QuadraticPresentation, top: usize, cap: usize) -> InflationSystem {
        let target = build(make(top, Fp::F2), cap);
        let models: Vec<ModelRef> = (1..=top).map(|k| build(make(k, Fp::F2), cap)).collect();
        let items = models
            .iter()
            .enumerate()
            .map(|(i, m)| InflationItem {
                name: format!("G{}", i + 1),
                map: GradedMap::new(m.clone(), target.clone(), coordinate(top, i + 1)).unwrap(),
            })
            .collect();
        let transitions = (0..top - 1)
            .map(|i| Transition {
                from: i,
                to: i + 1,
                map: GradedMap::new(models[i].clone(), models[i + 1].clone(), coordinate(i + 2, i + 1)).unwrap(),
            })
            .collect();
        InflationSystem::new(target, items, transitions).unwrap()
    }

    #[test]
    fn constructor_dimensions() {
        assert_eq!(build(exterior_presentation(0, Fp::F2), 3).hilbert_dims(), vec![1, 0, 0, 0]);
        assert_eq!(build(exterior_presentation(3, Fp::F2), 4).hilbert_dims(), vec![1, 3, 3, 1, 0]);
        let p3 = exterior_presentation(2, Fp::new(3).unwrap());
        assert_eq!(p3.relations().dim(), 3);
        assert_eq!(build(p3, 3).hilbert_dims(), vec![1, 2, 1, 0]);
        assert_eq!(build(cd1_presentation(2, Fp::F2), 2).hilbert_dims(), vec![1, 2, 0]);
    }

    #[test]
    fn closure_adds_composites() {
        let sys = chain(exterior_presentation, 3, 4);
        let pairs: Vec<(usize, usize)> = sys.transitions().iter().map(|t| (t.from, t.to)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2)]);
        assert!(sys.undirected_pair().is_none());
    }

    #[test]
    fn non_commuting_triangle_rejected() {
        let target = build(exterior_presentation(2, Fp::F2), 3);
        let line = build(exterior_presentation(1, Fp::F2), 3);
        let a = GradedMap::new(line.clone(), target.clone(), coordinate(2, 1)).unwrap();
        let b = GradedMap::identity(&target);
        let wrong = Matrix::from_rows(Fp::F2, 1, vec![vec![0], vec![1]]).unwrap();
        let t = GradedMap::new(line, target.clone(), wrong).unwrap();
        let err = InflationSystem::new(
            target,
            vec![
                InflationItem { name: "a".into(), map: a },
                InflationItem { name: "b".into(), map: b },
            ],
            vec![Transition { from: 0, to: 1, map: t }],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedSystem(_)));
    }

    #[test]
    fn exterior_chain_colimit() {
        let r = check_colimit_low_degree(&chain(exterior_presentation, 3, 4), 4).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn cd1_chain_colimit() {
        let r = check_colimit_low_degree(&chain(cd1_presentation, 3, 4), 4).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn missing_class_breaks_surjectivity() {
        let target = build(exterior_presentation(2, Fp::F2), 3);
        let line = build(exterior_presentation(1, Fp::F2), 3);
        let item = InflationItem {
            name: "line".into(),
            map: GradedMap::new(line, target.clone(), coordinate(2, 1)).unwrap(),
        };
        let sys = InflationSystem::new(target, vec![item], vec![]).unwrap();
        let r = check_colimit_low_degree(&sys, 3).unwrap();
        let s = r.first_failure().unwrap();
        assert_eq!((s.name.as_str(), s.degree), ("surjective", Some(1)));
        match &s.witness {
            Some(Witness::Element { element, .. }) => assert_eq!(element.coords, vec![0, 1]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unrelated_copies_are_not_injective_in_the_colimit() {
        // two copies of the target with no transitions: the diagonal difference dies
        let target = build(exterior_presentation(1, Fp::F2), 3);
        let items = (0..2)
            .map(|k| InflationItem {
                name: format!("copy{k}"),
                map: GradedMap::identity(&target),
            })
            .collect();
        let sys = InflationSystem::new(target, items, vec![]).unwrap();
        let r = check_colimit_low_degree(&sys, 3).unwrap();
        assert!(!r.passed);
        let inj = r.conclusions.iter().find(|s| s.name == "colimit_injective_degree_le_2").unwrap();
        assert_eq!(inj.degree, Some(0));
    }

    #[test]
    fn galois_pipeline_on_chains() {
        for make in [exterior_presentation as fn(usize, Fp) -> QuadraticPresentation, cd1_presentation] {
            let sys = chain(make, 3, 4);
            let r = check_galois_pipeline(&sys, Strategy::Exhaustive, 3, 4, &Budget::default()).unwrap();
            assert_eq!(r.verdict, GaloisVerdict::VerifiedUpTo(4), "{r:?}");
            assert_eq!(r.auk.as_ref().unwrap().items.len(), 3);
            assert!(r.identifications.iter().all(|i| i.relations_match));
        }
    }

    #[test]
    fn galois_tags_injectivity_failures() {
        // polynomial ring on one generator maps onto the exterior line, killing x²
        let target = build(exterior_presentation(1, Fp::F2), 3);
        let free = build(crate::presentation::free_presentation(1, Fp::F2), 3);
        let item = InflationItem {
            name: "free".into(),
            map: GradedMap::new(free, target.clone(), coordinate(1, 1)).unwrap(),
        };
        let sys = InflationSystem::new(target, vec![item], vec![]).unwrap();
        let r = check_galois_pipeline(&sys, Strategy::Exhaustive, 2, 3, &Budget::default()).unwrap();
        assert_eq!(
            r.verdict,
            GaloisVerdict::Fails {
                hypothesis: GaloisHypothesis::Ii,
                stage: "injective_degree_2".into(),
                item: Some(0)
            }
        );
    }
}
