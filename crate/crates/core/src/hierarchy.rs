//! The supersense inventory as a forest of labels, with depth, ancestry and
//! coarsening queries, plus construal validation.
//!
//! A hierarchy is read from a plain-text definition (one `<name>\t<parent>`
//! pair per line, roots with an empty parent, `#` comments). The bundled
//! definition is the 50-label SNACS inventory.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Deepest level any label may sit at. Roots are at depth 1.
pub const MAX_DEPTH: u8 = 4;

/// Text of the bundled 50-label definition.
pub const BUNDLED_DEFINITION: &str = include_str!("../data/snacs.hierarchy");

const BUNDLED_NODE_COUNT: usize = 50;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HierarchyError {
    #[error("line {line}: expected `<name>\\t<parent>`, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: duplicate supersense `{name}`")]
    DuplicateName { line: usize, name: String },
    #[error("supersense `{name}` names unknown parent `{parent}`")]
    UnknownParent { name: String, parent: String },
    #[error("parent links form a cycle through `{0}`")]
    Cycle(String),
    #[error("supersense `{name}` sits at depth {depth}, deeper than the maximum of {MAX_DEPTH}")]
    TooDeep { name: String, depth: u8 },
    #[error("bundled hierarchy must define {BUNDLED_NODE_COUNT} supersenses, found {0}")]
    NodeCount(usize),
    #[error("unknown supersense `{0}`")]
    UnknownLabel(String),
    #[error("target depth {0} is outside 1..={MAX_DEPTH}")]
    InvalidDepth(u8),
}

/// Dense index of a supersense within its hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupersenseId(u16);

impl SupersenseId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supersense {
    pub name: String,
    pub parent: Option<SupersenseId>,
    pub depth: u8,
}

/// An immutable supersense forest.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    nodes: Vec<Supersense>,
    index: HashMap<String, SupersenseId>,
}

impl Hierarchy {
    /// The bundled SNACS inventory.
    pub fn bundled() -> Hierarchy {
        Self::load_bundled(BUNDLED_DEFINITION).expect("bundled hierarchy definition is valid")
    }

    /// Parses `definition` and additionally requires the 50-node inventory.
    pub fn load_bundled(definition: &str) -> Result<Hierarchy, HierarchyError> {
        let h = Self::from_definition(definition)?;
        if h.len() != BUNDLED_NODE_COUNT {
            return Err(HierarchyError::NodeCount(h.len()));
        }
        Ok(h)
    }

    /// Parses a hierarchy definition. Parents may be listed after their children.
    pub fn from_definition(definition: &str) -> Result<Hierarchy, HierarchyError> {
        let mut entries: Vec<(String, Option<String>)> = Vec::new();
        let mut index = HashMap::new();
        for (lineno, raw) in definition.lines().enumerate() {
            let line = lineno + 1;
            let text = raw.trim_end_matches('\r');
            if text.trim().is_empty() || text.trim_start().starts_with('#') {
                continue;
            }
            let mut cols = text.split('\t');
            let name = cols.next().unwrap_or("").trim();
            let parent = cols.next().map(str::trim);
            if name.is_empty() || cols.next().is_some() {
                return Err(HierarchyError::Malformed { line, text: text.to_string() });
            }
            if index.contains_key(name) {
                return Err(HierarchyError::DuplicateName { line, name: name.to_string() });
            }
            index.insert(name.to_string(), SupersenseId(entries.len() as u16));
            let parent = parent.filter(|p| !p.is_empty()).map(str::to_string);
            entries.push((name.to_string(), parent));
        }

        let mut parents = Vec::with_capacity(entries.len());
        for (name, parent) in &entries {
            let id = match parent {
                None => None,
                Some(p) => Some(*index.get(p).ok_or_else(|| HierarchyError::UnknownParent {
                    name: name.clone(),
                    parent: p.clone(),
                })?),
            };
            parents.push(id);
        }

        let mut depths = vec![0u8; entries.len()];
        for start in 0..entries.len() {
            let mut chain = Vec::new();
            let mut cur = Some(start);
            let mut base = 0u8;
            while let Some(i) = cur {
                if depths[i] != 0 {
                    base = depths[i];
                    break;
                }
                if chain.contains(&i) || chain.len() > entries.len() {
                    return Err(HierarchyError::Cycle(entries[i].0.clone()));
                }
                chain.push(i);
                cur = parents[i].map(SupersenseId::index);
            }
            for (offset, &i) in chain.iter().rev().enumerate() {
                let depth = base as usize + offset + 1;
                if depth > MAX_DEPTH as usize {
                    return Err(HierarchyError::TooDeep {
                        name: entries[i].0.clone(),
                        depth: depth.min(u8::MAX as usize) as u8,
                    });
                }
                depths[i] = depth as u8;
            }
        }

        let nodes = entries
            .into_iter()
            .zip(parents)
            .zip(depths)
            .map(|(((name, _), parent), depth)| Supersense { name, parent, depth })
            .collect();
        Ok(Hierarchy { nodes, index })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<SupersenseId> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn node(&self, id: SupersenseId) -> &Supersense {
        &self.nodes[id.index()]
    }

    pub fn name(&self, id: SupersenseId) -> &str {
        &self.nodes[id.index()].name
    }

    /// Labels in definition order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(|n| n.name.as_str())
    }

    pub fn ids(&self) -> impl Iterator<Item = SupersenseId> {
        (0..self.nodes.len() as u16).map(SupersenseId)
    }

    pub fn roots(&self) -> Vec<&str> {
        self.nodes.iter().filter(|n| n.parent.is_none()).map(|n| n.name.as_str()).collect()
    }

    fn lookup(&self, name: &str) -> Result<SupersenseId, HierarchyError> {
        self.id(name).ok_or_else(|| HierarchyError::UnknownLabel(name.to_string()))
    }

    pub fn depth(&self, name: &str) -> Result<u8, HierarchyError> {
        Ok(self.node(self.lookup(name)?).depth)
    }

    pub fn parent(&self, name: &str) -> Result<Option<&str>, HierarchyError> {
        Ok(self.node(self.lookup(name)?).parent.map(|p| self.name(p)))
    }

    /// The label followed by its ancestors, ending at a root.
    pub fn ancestry(&self, name: &str) -> Result<Vec<&str>, HierarchyError> {
        let mut out = Vec::new();
        let mut cur = Some(self.lookup(name)?);
        while let Some(id) = cur {
            out.push(self.name(id));
            cur = self.node(id).parent;
        }
        Ok(out)
    }

    /// Number of labels in the subtree rooted at `name`, itself included.
    pub fn subtree_size(&self, name: &str) -> Result<usize, HierarchyError> {
        let root = self.lookup(name)?;
        Ok(self.ids().filter(|&id| self.is_descendant_or_self(id, root)).count())
    }

    fn is_descendant_or_self(&self, mut id: SupersenseId, ancestor: SupersenseId) -> bool {
        loop {
            if id == ancestor {
                return true;
            }
            match self.node(id).parent {
                Some(p) => id = p,
                None => return false,
            }
        }
    }

    pub fn coarsen_id(&self, id: SupersenseId, target_depth: u8) -> SupersenseId {
        let mut cur = id;
        while self.node(cur).depth > target_depth {
            cur = self.node(cur).parent.expect("non-root node has a parent");
        }
        cur
    }

    /// The ancestor of `name` at `target_depth`, or `name` itself when it is
    /// already at or above that depth.
    pub fn coarsen(&self, name: &str, target_depth: u8) -> Result<&str, HierarchyError> {
        check_depth(target_depth)?;
        let id = self.lookup(name)?;
        Ok(self.name(self.coarsen_id(id, target_depth)))
    }

    /// How many distinct labels remain after coarsening `labels` to `target_depth`.
    pub fn coarsened_label_count<'a, I>(&self, labels: I, target_depth: u8) -> Result<usize, HierarchyError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        check_depth(target_depth)?;
        let mut seen = BTreeSet::new();
        for label in labels {
            seen.insert(self.coarsen_id(self.lookup(label)?, target_depth));
        }
        Ok(seen.len())
    }

    /// Checks that both slots name known labels and that the function slot
    /// does not use a role-only label.
    pub fn validate_construal(
        &self,
        construal: &Construal,
        role_only: &RoleOnly,
    ) -> Result<(), ConstrualRejection> {
        if !self.contains(&construal.role) {
            return Err(ConstrualRejection::UnknownRole(construal.role.clone()));
        }
        if !self.contains(&construal.function) {
            return Err(ConstrualRejection::UnknownFunction(construal.function.clone()));
        }
        if role_only.contains(&construal.function) {
            return Err(ConstrualRejection::RoleOnlyFunction(construal.function.clone()));
        }
        Ok(())
    }
}

pub(crate) fn check_depth(depth: u8) -> Result<(), HierarchyError> {
    if (1..=MAX_DEPTH).contains(&depth) {
        Ok(())
    } else {
        Err(HierarchyError::InvalidDepth(depth))
    }
}

/// Labels that may only fill the role slot of a construal. Empty by default.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoleOnly(BTreeSet<String>);

impl RoleOnly {
    pub fn new<I, S>(labels: I) -> RoleOnly
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        RoleOnly(labels.into_iter().map(Into::into).collect())
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.contains(label)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A scene role paired with the function the marker itself contributes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Construal {
    pub role: String,
    pub function: String,
}

impl Construal {
    pub fn new(role: impl Into<String>, function: impl Into<String>) -> Construal {
        Construal { role: role.into(), function: function.into() }
    }

    /// A construal whose role and function coincide.
    pub fn congruent(label: impl Into<String>) -> Construal {
        let label = label.into();
        Construal { role: label.clone(), function: label }
    }

    pub fn is_congruent(&self) -> bool {
        self.role == self.function
    }

    pub fn slot(&self, dim: Dimension) -> &str {
        match dim {
            Dimension::Role => &self.role,
            Dimension::Function => &self.function,
        }
    }

    /// Both slots coarsened to `depth`. Unknown labels are left untouched.
    pub fn coarsened(&self, h: &Hierarchy, depth: u8) -> Construal {
        let c = |l: &str| h.coarsen(l, depth).unwrap_or(l).to_string();
        Construal { role: c(&self.role), function: c(&self.function) }
    }
}

/// Displays `Role↝Function`, or a single label when both slots agree.
impl fmt::Display for Construal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_congruent() {
            write!(f, "{}", self.role)
        } else {
            write!(f, "{}↝{}", self.role, self.function)
        }
    }
}

/// Which slot of a construal a metric looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Role,
    Function,
}

impl Dimension {
    pub const BOTH: [Dimension; 2] = [Dimension::Role, Dimension::Function];

    pub fn as_str(self) -> &'static str {
        match self {
            Dimension::Role => "role",
            Dimension::Function => "function",
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Dimension {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "role" => Ok(Dimension::Role),
            "function" | "fxn" | "func" => Ok(Dimension::Function),
            other => Err(format!("unknown dimension `{other}` (expected role or function)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstrualRejection {
    #[error("role `{0}` is not a known supersense")]
    UnknownRole(String),
    #[error("function `{0}` is not a known supersense")]
    UnknownFunction(String),
    #[error("`{0}` may only be used as a scene role, not as a function")]
    RoleOnlyFunction(String),
}

impl ConstrualRejection {
    pub fn slot(&self) -> Dimension {
        match self {
            ConstrualRejection::UnknownRole(_) => Dimension::Role,
            _ => Dimension::Function,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_shape() {
        let h = Hierarchy::bundled();
        assert_eq!(h.len(), 50);
        assert_eq!(h.roots(), vec!["Circumstance", "Participant", "Configuration"]);
        assert_eq!(h.subtree_size("Circumstance").unwrap(), 18);
        assert_eq!(h.subtree_size("Participant").unwrap(), 14);
        assert_eq!(h.subtree_size("Configuration").unwrap(), 18);
        assert_eq!(h.ids().map(|id| h.node(id).depth).max(), Some(4));
    }

    #[test]
    fn stuff_ancestry() {
        let h = Hierarchy::bundled();
        assert_eq!(
            h.ancestry("Stuff").unwrap(),
            vec!["Stuff", "PartPortion", "Characteristic", "Configuration"]
        );
    }

    #[test]
    fn depths() {
        let h = Hierarchy::bundled();
        assert_eq!(h.depth("Circumstance").unwrap(), 1);
        assert_eq!(h.depth("Goal").unwrap(), 3);
        assert_eq!(h.depth("Co-Agent").unwrap(), 4);
        assert_eq!(h.depth("co-agent"), Err(HierarchyError::UnknownLabel("co-agent".into())));
    }

    #[test]
    fn coarsening_examples() {
        let h = Hierarchy::bundled();
        assert_eq!(h.coarsen("StartTime", 2).unwrap(), "Temporal");
        assert_eq!(h.coarsen("Locus", 1).unwrap(), "Circumstance");
        assert_eq!(h.coarsen("Circumstance", 3).unwrap(), "Circumstance");
        assert_eq!(h.coarsen("Locus", 0), Err(HierarchyError::InvalidDepth(0)));
        assert_eq!(h.coarsen("Locus", 5), Err(HierarchyError::InvalidDepth(5)));
    }

    #[test]
    fn duplicate_name_rejected() {
        let def = "Circumstance\t\nLocus\tCircumstance\nLocus\tCircumstance\n";
        assert_eq!(
            Hierarchy::from_definition(def).unwrap_err(),
            HierarchyError::DuplicateName { line: 3, name: "Locus".into() }
        );
    }

    #[test]
    fn unknown_parent_and_cycle() {
        assert!(matches!(
            Hierarchy::from_definition("A\tB\n").unwrap_err(),
            HierarchyError::UnknownParent { .. }
        ));
        assert!(matches!(
            Hierarchy::from_definition("A\tB\nB\tC\nC\tA\n").unwrap_err(),
            HierarchyError::Cycle(_)
        ));
        assert!(matches!(
            Hierarchy::from_definition("A\tA\n").unwrap_err(),
            HierarchyError::Cycle(_)
        ));
    }

    #[test]
    fn too_deep_and_count() {
        let def = "A\t\nB\tA\nC\tB\nD\tC\nE\tD\n";
        assert!(matches!(Hierarchy::from_definition(def).unwrap_err(), HierarchyError::TooDeep { .. }));
        let small = "A\t\nB\tA\n";
        assert_eq!(Hierarchy::load_bundled(small).unwrap_err(), HierarchyError::NodeCount(2));
    }

    #[test]
    fn parent_listed_after_child() {
        let h = Hierarchy::from_definition("# c\nB\tA\nA\t\n").unwrap();
        assert_eq!(h.depth("B").unwrap(), 2);
        assert_eq!(h.parent("B").unwrap(), Some("A"));
    }

    #[test]
    fn construal_validation() {
        let h = Hierarchy::bundled();
        let none = RoleOnly::default();
        assert!(h.validate_construal(&Construal::new("OrgRole", "Locus"), &none).is_ok());
        assert!(h.validate_construal(&Construal::congruent("Locus"), &none).is_ok());
        let exp = RoleOnly::new(["Experiencer"]);
        let err = h.validate_construal(&Construal::new("Theme", "Experiencer"), &exp).unwrap_err();
        assert_eq!(err, ConstrualRejection::RoleOnlyFunction("Experiencer".into()));
        assert_eq!(err.slot(), Dimension::Function);
        let err = h.validate_construal(&Construal::new("temporal", "Time"), &none).unwrap_err();
        assert_eq!(err.slot(), Dimension::Role);
    }

    #[test]
    fn construal_display() {
        assert_eq!(Construal::new("OrgRole", "Locus").to_string(), "OrgRole↝Locus");
        assert_eq!(Construal::congruent("Locus").to_string(), "Locus");
    }
}
