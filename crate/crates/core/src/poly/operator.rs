//! Linear operators on [`PolyField`] as immutable expression trees.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{format_rational, parse_rational, GaussianRational};
use crate::poly::{Axis, PolyField, PolyFieldJson};
use crate::scalar::Coefficient;

enum Node<C> {
    Identity,
    Partial(Axis),
    CoordinateMul(Axis),
    RingMul(PolyField<C>),
    EulerDegree,
    Laplacian,
    /// Applied right to left: `Compose([a, b])` is `a∘b`.
    Compose(Vec<LinearOperator<C>>),
    Sum(Vec<LinearOperator<C>>),
    Scale(C, LinearOperator<C>),
}

/// A composable linear map `PolyField → PolyField`.
///
/// Cloning is cheap; subtrees are shared.
#[derive(Clone)]
pub struct LinearOperator<C> {
    node: Arc<Node<C>>,
}

impl<C: Coefficient> LinearOperator<C> {
    fn from_node(node: Node<C>) -> Self {
        LinearOperator { node: Arc::new(node) }
    }

    pub fn identity() -> Self {
        Self::from_node(Node::Identity)
    }

    pub fn partial(axis: Axis) -> Self {
        Self::from_node(Node::Partial(axis))
    }

    pub fn coordinate_mul(axis: Axis) -> Self {
        Self::from_node(Node::CoordinateMul(axis))
    }

    pub fn ring_mul(f: PolyField<C>) -> Self {
        Self::from_node(Node::RingMul(f))
    }

    /// `l̂ = p·∇`.
    pub fn euler_degree() -> Self {
        Self::from_node(Node::EulerDegree)
    }

    pub fn laplacian() -> Self {
        Self::from_node(Node::Laplacian)
    }

    /// `self∘inner`: apply `inner` first.
    pub fn compose(&self, inner: &Self) -> Self {
        Self::compose_all(vec![self.clone(), inner.clone()])
    }

    /// `ops[0]∘ops[1]∘…`. Panics on an empty list.
    pub fn compose_all(ops: Vec<Self>) -> Self {
        assert!(!ops.is_empty(), "composition of zero operators");
        if ops.len() == 1 {
            return ops.into_iter().next().unwrap();
        }
        Self::from_node(Node::Compose(ops))
    }

    /// Panics on an empty list.
    pub fn sum(ops: Vec<Self>) -> Self {
        assert!(!ops.is_empty(), "sum of zero operators");
        if ops.len() == 1 {
            return ops.into_iter().next().unwrap();
        }
        Self::from_node(Node::Sum(ops))
    }

    pub fn scale(&self, c: C) -> Self {
        Self::from_node(Node::Scale(c, self.clone()))
    }

    pub fn apply(&self, f: &PolyField<C>) -> PolyField<C> {
        match &*self.node {
            Node::Identity => f.clone(),
            Node::Partial(a) => f.partial(*a),
            Node::CoordinateMul(a) => f.mul_coordinate(*a),
            Node::RingMul(g) => g * f,
            Node::EulerDegree => f.euler_degree(),
            Node::Laplacian => f.laplacian(),
            Node::Compose(ops) => {
                let mut acc = f.clone();
                for op in ops.iter().rev() {
                    if acc.is_zero() {
                        break;
                    }
                    acc = op.apply(&acc);
                }
                acc
            }
            Node::Sum(ops) => {
                ops.iter().map(|op| op.apply(f)).fold(PolyField::zero(), |acc, t| &acc + &t)
            }
            Node::Scale(c, op) => op.apply(f).scale(c),
        }
    }
}

impl<C: Coefficient> Add for &LinearOperator<C> {
    type Output = LinearOperator<C>;
    fn add(self, rhs: Self) -> LinearOperator<C> {
        LinearOperator::sum(vec![self.clone(), rhs.clone()])
    }
}

impl<C: Coefficient> Sub for &LinearOperator<C> {
    type Output = LinearOperator<C>;
    fn sub(self, rhs: Self) -> LinearOperator<C> {
        LinearOperator::sum(vec![self.clone(), rhs.scale(-C::one())])
    }
}

impl<C: Coefficient> Neg for &LinearOperator<C> {
    type Output = LinearOperator<C>;
    fn neg(self) -> LinearOperator<C> {
        self.scale(-C::one())
    }
}

impl<C: fmt::Debug> fmt::Debug for LinearOperator<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            Node::Identity => write!(f, "id"),
            Node::Partial(a) => write!(f, "∂{}", a.number()),
            Node::CoordinateMul(a) => write!(f, "p{}", a.number()),
            Node::RingMul(g) => write!(f, "mul({:?})", g),
            Node::EulerDegree => write!(f, "l̂"),
            Node::Laplacian => write!(f, "Δ"),
            Node::Compose(ops) => f.debug_tuple("compose").field(ops).finish(),
            Node::Sum(ops) => f.debug_tuple("sum").field(ops).finish(),
            Node::Scale(c, op) => f.debug_tuple("scale").field(c).field(op).finish(),
        }
    }
}

/// Scalar in operator JSON: `{re:"a/b", im:"c/d"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub re: String,
    pub im: String,
}

/// JSON expression-tree node: a primitive name plus children.
///
/// Names: `identity`, `partial`, `coordinateMul`, `ringMul`, `eulerDegree`,
/// `laplacian`, `compose`, `add`, `scale`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<ScalarJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<PolyFieldJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<OperatorSpec>,
}

impl OperatorSpec {
    pub fn leaf(op: &str) -> Self {
        OperatorSpec { op: op.to_string(), axis: None, scalar: None, field: None, children: Vec::new() }
    }

    pub fn with_axis(op: &str, axis: u8) -> Self {
        OperatorSpec { axis: Some(axis), ..Self::leaf(op) }
    }

    pub fn node(op: &str, children: Vec<OperatorSpec>) -> Self {
        OperatorSpec { children, ..Self::leaf(op) }
    }
}

/// Validates an expression tree and builds the operator it describes.
pub fn build_operator(spec: &OperatorSpec) -> Result<LinearOperator<GaussianRational>> {
    let malformed = |msg: String| Err(Error::MalformedOperator(msg));
    let leaf = matches!(
        spec.op.as_str(),
        "identity" | "partial" | "coordinateMul" | "ringMul" | "eulerDegree" | "laplacian"
    );
    if leaf && !spec.children.is_empty() {
        return malformed(format!("`{}` takes no children", spec.op));
    }
    let axis = || -> Result<Axis> {
        let n = spec
            .axis
            .ok_or_else(|| Error::MalformedOperator(format!("`{}` requires an axis", spec.op)))?;
        Axis::from_number(n).map_err(|e| Error::MalformedOperator(e.to_string()))
    };
    match spec.op.as_str() {
        "identity" => Ok(LinearOperator::identity()),
        "partial" => Ok(LinearOperator::partial(axis()?)),
        "coordinateMul" => Ok(LinearOperator::coordinate_mul(axis()?)),
        "ringMul" => {
            let Some(field) = &spec.field else {
                return malformed("`ringMul` requires a field".into());
            };
            Ok(LinearOperator::ring_mul(PolyField::from_json(field)?))
        }
        "eulerDegree" => Ok(LinearOperator::euler_degree()),
        "laplacian" => Ok(LinearOperator::laplacian()),
        "compose" | "add" => {
            if spec.children.is_empty() {
                return malformed(format!("`{}` needs at least one child", spec.op));
            }
            let children = spec.children.iter().map(build_operator).collect::<Result<Vec<_>>>()?;
            Ok(if spec.op == "compose" {
                LinearOperator::compose_all(children)
            } else {
                LinearOperator::sum(children)
            })
        }
        "scale" => {
            let [child] = spec.children.as_slice() else {
                return malformed("`scale` takes exactly one child".into());
            };
            let Some(s) = &spec.scalar else {
                return malformed("`scale` requires a scalar".into());
            };
            let c = GaussianRational::new(parse_rational(&s.re)?, parse_rational(&s.im)?);
            Ok(build_operator(child)?.scale(c))
        }
        other => malformed(format!("unknown primitive `{other}`")),
    }
}

impl LinearOperator<GaussianRational> {
    /// Inverse of [`build_operator`].
    pub fn to_spec(&self) -> OperatorSpec {
        match &*self.node {
            Node::Identity => OperatorSpec::leaf("identity"),
            Node::Partial(a) => OperatorSpec::with_axis("partial", a.number()),
            Node::CoordinateMul(a) => OperatorSpec::with_axis("coordinateMul", a.number()),
            Node::RingMul(g) => OperatorSpec { field: Some(g.to_json()), ..OperatorSpec::leaf("ringMul") },
            Node::EulerDegree => OperatorSpec::leaf("eulerDegree"),
            Node::Laplacian => OperatorSpec::leaf("laplacian"),
            Node::Compose(ops) => OperatorSpec::node("compose", ops.iter().map(Self::to_spec).collect()),
            Node::Sum(ops) => OperatorSpec::node("add", ops.iter().map(Self::to_spec).collect()),
            Node::Scale(c, op) => OperatorSpec {
                scalar: Some(ScalarJson { re: format_rational(c.re()), im: format_rational(c.im()) }),
                ..OperatorSpec::node("scale", vec![op.to_spec()])
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial3;

    type F = PolyField<GaussianRational>;
    type Op = LinearOperator<GaussianRational>;

    #[test]
    fn identity_and_scale_laws() {
        let f = F::weight(-1);
        assert_eq!(Op::identity().apply(&f), f);
        let two = Op::identity().scale(GaussianRational::from_integer(2));
        assert_eq!(two.apply(&f), f.scale(&GaussianRational::from_integer(2)));
        let p3 = F::coordinate(Axis::Z);
        assert_eq!(Op::identity().apply(&p3), p3);
    }

    #[test]
    fn compose_applies_inner_first() {
        // ∂₁(p₁·1) = 1
        let op = Op::partial(Axis::X).compose(&Op::coordinate_mul(Axis::X));
        assert_eq!(op.apply(&F::one()), F::one());
        // p₁·∂₁(1) = 0
        let op = Op::coordinate_mul(Axis::X).compose(&Op::partial(Axis::X));
        assert!(op.apply(&F::one()).is_zero());
    }

    #[test]
    fn laplacian_and_euler_plus_identity() {
        assert_eq!(Op::laplacian().apply(&F::momentum_squared()), F::constant(GaussianRational::from_integer(6)));
        let xy = &F::coordinate(Axis::X) * &F::coordinate(Axis::Y);
        let op = &Op::euler_degree() + &Op::identity();
        assert_eq!(op.apply(&xy), xy.scale(&GaussianRational::from_integer(3)));
    }

    #[test]
    fn operator_description_round_trip() {
        let op = (&Op::euler_degree() - &Op::ring_mul(F::weight(-2)))
            .compose(&Op::partial(Axis::Y))
            .scale(GaussianRational::i());
        let spec = op.to_spec();
        let json = serde_json::to_string(&spec).unwrap();
        let parsed: OperatorSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, spec);
        let rebuilt = build_operator(&parsed).unwrap();
        let f = F::new(Polynomial3::variable(1).pow(3), 1);
        assert_eq!(rebuilt.apply(&f), op.apply(&f));
    }

    #[test]
    fn malformed_trees_are_rejected() {
        let cases = [
            OperatorSpec::leaf("partial"),
            OperatorSpec::with_axis("partial", 4),
            OperatorSpec::leaf("ringMul"),
            OperatorSpec::node("compose", vec![]),
            OperatorSpec::node("scale", vec![OperatorSpec::leaf("identity")]),
            OperatorSpec::node("identity", vec![OperatorSpec::leaf("identity")]),
            OperatorSpec::leaf("rotate"),
        ];
        for spec in &cases {
            assert!(matches!(build_operator(spec), Err(Error::MalformedOperator(_))), "{spec:?}");
        }
    }
}
