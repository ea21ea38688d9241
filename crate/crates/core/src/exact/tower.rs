use std::fmt;
use std::sync::Arc;

use super::elem::{self, Elem};
use super::{ExactError, Sign};

struct TowerNode {
    parent: Option<FieldTower>,
    radicands: Vec<Elem>,
}

/// An immutable tower `Q = K_0 ⊂ K_1 ⊂ … ⊂ K_depth` where `K_i = K_{i-1}(sqrt(d_i))`.
///
/// Every radicand is positive and a non-square in the field below it.
/// Towers share structure: extending a tower never copies its elements.
#[derive(Clone)]
pub struct FieldTower(Arc<TowerNode>);

impl FieldTower {
    /// The tower of depth zero (plain rationals).
    pub fn rationals() -> FieldTower {
        FieldTower(Arc::new(TowerNode {
            parent: None,
            radicands: Vec::new(),
        }))
    }

    pub fn depth(&self) -> usize {
        self.0.radicands.len()
    }

    pub(crate) fn radicands(&self) -> &[Elem] {
        &self.0.radicands
    }

    pub fn parent(&self) -> Option<&FieldTower> {
        self.0.parent.as_ref()
    }

    pub fn ptr_eq(&self, other: &FieldTower) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Adjoin `sqrt(radicand)`. The radicand must be an element of this tower.
    pub(crate) fn extend_raw(&self, radicand: Elem) -> Result<FieldTower, ExactError> {
        let rads = self.radicands();
        if elem::sign(rads, &radicand) != Sign::Positive {
            return Err(ExactError::DegenerateRadicand(
                "radicand must be positive".into(),
            ));
        }
        if elem::try_sqrt(rads, &radicand, self.depth()).is_some() {
            return Err(ExactError::DegenerateRadicand(
                "radicand is already a square in the tower".into(),
            ));
        }
        let mut radicands = rads.to_vec();
        radicands.push(radicand);
        Ok(FieldTower(Arc::new(TowerNode {
            parent: Some(self.clone()),
            radicands,
        })))
    }

    /// The initial segment of depth `depth` (which must not exceed this depth).
    pub fn ancestor(&self, depth: usize) -> FieldTower {
        assert!(depth <= self.depth());
        let mut cur = self;
        while cur.depth() > depth {
            match cur.parent() {
                Some(p) => cur = p,
                None => break,
            }
        }
        if cur.depth() == depth {
            return cur.clone();
        }
        // merged towers may not record every ancestor; rebuild the prefix
        let mut t = FieldTower::rationals();
        for d in &self.radicands()[..depth] {
            t = FieldTower(Arc::new(TowerNode {
                parent: Some(t.clone()),
                radicands: [t.radicands(), std::slice::from_ref(d)].concat(),
            }));
        }
        t
    }

    /// A tower having `self` as a prefix and containing every element of `other`.
    pub fn extend_with(&self, other: &FieldTower) -> FieldTower {
        FieldTower::merge(self, other).0
    }

    /// True when `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        if self.depth() > other.depth() {
            return false;
        }
        // walk other's ancestry first; structural comparison is the fallback
        let mut cur = Some(other);
        while let Some(t) = cur {
            if t.depth() < self.depth() {
                break;
            }
            if t.ptr_eq(self) {
                return true;
            }
            cur = t.parent();
        }
        self.radicands()
            .iter()
            .zip(other.radicands())
            .all(|(a, b)| a == b)
    }

    /// A tower containing both inputs, plus maps that carry elements of each
    /// input into it. When one tower is a prefix of the other the larger one is
    /// returned unchanged.
    pub(crate) fn merge(a: &FieldTower, b: &FieldTower) -> (FieldTower, Lift, Lift) {
        if a.is_prefix_of(b) {
            return (b.clone(), Lift::Identity, Lift::Identity);
        }
        if b.is_prefix_of(a) {
            return (a.clone(), Lift::Identity, Lift::Identity);
        }
        let mut merged = a.clone();
        let mut images: Vec<Elem> = Vec::with_capacity(b.depth());
        for d in b.radicands() {
            let d_img = Lift::apply_with(&images, merged.radicands(), d);
            match elem::try_sqrt(merged.radicands(), &d_img, merged.depth()) {
                Some(root) => images.push(root),
                None => {
                    merged = merged
                        .extend_raw(d_img)
                        .expect("positive non-square radicand");
                    images.push(Elem::generator(merged.depth()));
                }
            }
        }
        (merged, Lift::Identity, Lift::Generators(images))
    }
}

/// How to carry an element from a source tower into a merged tower.
pub(crate) enum Lift {
    Identity,
    /// Image of each generator `sqrt(d_i)` of the source tower.
    Generators(Vec<Elem>),
}

impl Lift {
    pub(crate) fn apply(&self, target_rads: &[Elem], x: &Elem) -> Elem {
        match self {
            Lift::Identity => x.clone(),
            Lift::Generators(images) => Lift::apply_with(images, target_rads, x),
        }
    }

    fn apply_with(images: &[Elem], target_rads: &[Elem], x: &Elem) -> Elem {
        match x {
            Elem::Rat(_) => x.clone(),
            Elem::Quad { level, a, b } => {
                let a = Lift::apply_with(images, target_rads, a);
                let b = Lift::apply_with(images, target_rads, b);
                elem::add(&a, &elem::mul(target_rads, &b, &images[level - 1]))
            }
        }
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower[")?;
        for (i, d) in self.radicands().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", super::expr::format_elem(self.radicands(), d))?;
        }
        write!(f, "]")
    }
}
