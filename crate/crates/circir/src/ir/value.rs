use std::fmt;

use thiserror::Error;

/// Scalar element types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarTy {
    Int,
    Bool,
}

impl fmt::Display for ScalarTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarTy::Int => write!(f, "int"),
            ScalarTy::Bool => write!(f, "bool"),
        }
    }
}

/// A single scalar: a 64-bit two's-complement integer or a boolean.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarValue {
    Int(i64),
    Bool(bool),
}

impl ScalarValue {
    pub fn ty(&self) -> ScalarTy {
        match self {
            ScalarValue::Int(_) => ScalarTy::Int,
            ScalarValue::Bool(_) => ScalarTy::Bool,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            ScalarValue::Int(n) => Some(*n),
            ScalarValue::Bool(_) => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            ScalarValue::Bool(b) => Some(*b),
            ScalarValue::Int(_) => None,
        }
    }

    /// Two's-complement word encoding: integers reinterpret bitwise,
    /// booleans map to 0/1.
    pub fn to_word(&self) -> u64 {
        match self {
            ScalarValue::Int(n) => *n as u64,
            ScalarValue::Bool(b) => *b as u64,
        }
    }

    pub fn from_word(ty: ScalarTy, word: u64) -> Result<ScalarValue, ValueError> {
        match ty {
            ScalarTy::Int => Ok(ScalarValue::Int(word as i64)),
            ScalarTy::Bool => match word {
                0 => Ok(ScalarValue::Bool(false)),
                1 => Ok(ScalarValue::Bool(true)),
                _ => Err(ValueError::TypeMismatch(format!(
                    "word {word} does not encode a bool"
                ))),
            },
        }
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::Int(n) => write!(f, "{n}"),
            ScalarValue::Bool(b) => write!(f, "{b}"),
        }
    }
}

/// Errors raised by the pure value operations.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("index {index} out of bounds for dimension {dim} of size {size}")]
    IndexOutOfBounds { index: i64, dim: usize, size: usize },
    #[error("rank mismatch: expected {expected} indices, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("malformed array: shape {shape:?} expects {expected} elements, got {got}")]
    MalformedArray {
        shape: Vec<usize>,
        expected: usize,
        got: usize,
    },
}

/// A multidimensional array of scalars in row-major order.
///
/// A scalar is canonically a zero-dimensional array (empty shape, one
/// element), so there is no separate scalar/array split anywhere in the
/// pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Value {
    elem: ScalarTy,
    shape: Vec<usize>,
    data: Vec<ScalarValue>,
}

impl Value {
    pub fn new(elem: ScalarTy, shape: Vec<usize>, data: Vec<ScalarValue>) -> Result<Value, ValueError> {
        let expected: usize = shape.iter().product();
        if data.len() != expected {
            return Err(ValueError::MalformedArray {
                shape,
                expected,
                got: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|s| s.ty() != elem) {
            return Err(ValueError::TypeMismatch(format!(
                "array of {elem} contains {}",
                bad.ty()
            )));
        }
        Ok(Value { elem, shape, data })
    }

    pub fn scalar(s: ScalarValue) -> Value {
        Value {
            elem: s.ty(),
            shape: Vec::new(),
            data: vec![s],
        }
    }

    pub fn int(n: i64) -> Value {
        Value::scalar(ScalarValue::Int(n))
    }

    pub fn bool(b: bool) -> Value {
        Value::scalar(ScalarValue::Bool(b))
    }

    pub fn from_ints(shape: Vec<usize>, ints: Vec<i64>) -> Result<Value, ValueError> {
        Value::new(ScalarTy::Int, shape, ints.into_iter().map(ScalarValue::Int).collect())
    }

    pub fn elem_ty(&self) -> ScalarTy {
        self.elem
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn data(&self) -> &[ScalarValue] {
        &self.data
    }

    pub fn is_scalar(&self) -> bool {
        self.shape.is_empty()
    }

    pub fn as_scalar(&self) -> Option<ScalarValue> {
        if self.is_scalar() {
            Some(self.data[0])
        } else {
            None
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        self.as_scalar().and_then(|s| s.as_int())
    }

    pub fn as_bool(&self) -> Option<bool> {
        self.as_scalar().and_then(|s| s.as_bool())
    }

    /// Word encoding of the element list, used for secret sharing and
    /// commitment digests.
    pub fn to_words(&self) -> Vec<u64> {
        self.data.iter().map(|s| s.to_word()).collect()
    }

    pub fn from_words(elem: ScalarTy, shape: Vec<usize>, words: &[u64]) -> Result<Value, ValueError> {
        let data = words
            .iter()
            .map(|w| ScalarValue::from_word(elem, *w))
            .collect::<Result<Vec<_>, _>>()?;
        Value::new(elem, shape, data)
    }
}

/// Displays values in the textual conventions shared by scripts and
/// traces: bare scalars, and `int[2,2] [1,2,3,4]` for arrays.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.as_scalar() {
            return write!(f, "{s}");
        }
        write!(f, "{}[", self.elem)?;
        for (i, d) in self.shape.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "] [")?;
        for (i, s) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// Looks up one element of `arr` at the given index vector (row-major).
///
/// A zero-rank array with an empty index list returns its single scalar.
pub fn array_get(arr: &Value, indices: &[i64]) -> Result<ScalarValue, ValueError> {
    if indices.len() != arr.rank() {
        return Err(ValueError::RankMismatch {
            expected: arr.rank(),
            got: indices.len(),
        });
    }
    let mut offset = 0usize;
    for (dim, (&idx, &size)) in indices.iter().zip(arr.shape().iter()).enumerate() {
        if idx < 0 || idx as usize >= size {
            return Err(ValueError::IndexOutOfBounds { index: idx, dim, size });
        }
        offset = offset * size + idx as usize;
    }
    Ok(arr.data()[offset])
}

/// The fixed binary operator set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Min,
    Max,
    Eq,
    Ne,
    Lt,
    Le,
    And,
    Or,
    Xor,
}

impl BinOp {
    pub const ALL: [BinOp; 14] = [
        BinOp::Add,
        BinOp::Sub,
        BinOp::Mul,
        BinOp::Div,
        BinOp::Rem,
        BinOp::Min,
        BinOp::Max,
        BinOp::Eq,
        BinOp::Ne,
        BinOp::Lt,
        BinOp::Le,
        BinOp::And,
        BinOp::Or,
        BinOp::Xor,
    ];

    pub fn symbol(&self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Rem => "%",
            BinOp::Min => "min",
            BinOp::Max => "max",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::And => "&&",
            BinOp::Or => "||",
            BinOp::Xor => "^",
        }
    }

    pub fn from_symbol(s: &str) -> Option<BinOp> {
        BinOp::ALL.iter().copied().find(|op| op.symbol() == s)
    }

    /// Result type when both operands have type `operand`, or None when
    /// the operator does not apply at that type.
    pub fn result_ty(&self, operand: ScalarTy) -> Option<ScalarTy> {
        use BinOp::*;
        match (self, operand) {
            (Add | Sub | Mul | Div | Rem | Min | Max | Xor, ScalarTy::Int) => Some(ScalarTy::Int),
            (Eq | Ne | Lt | Le, ScalarTy::Int) => Some(ScalarTy::Bool),
            (And | Or | Xor | Eq | Ne, ScalarTy::Bool) => Some(ScalarTy::Bool),
            _ => None,
        }
    }

    /// Whether `op` is closed over `operand` (usable as a reduce operator).
    pub fn closed_over(&self, operand: ScalarTy) -> bool {
        self.result_ty(operand) == Some(operand)
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Applies a binary operator to two scalars.
///
/// Integer arithmetic is wrapping two's-complement on 64 bits; `/` and `%`
/// truncate toward zero and raise [`ValueError::DivisionByZero`] on a zero
/// divisor.
pub fn eval_binop(op: BinOp, lhs: ScalarValue, rhs: ScalarValue) -> Result<ScalarValue, ValueError> {
    use BinOp::*;
    use ScalarValue::{Bool, Int};
    let mismatch = || {
        Err(ValueError::TypeMismatch(format!(
            "operator {op} not defined on {} and {}",
            lhs.ty(),
            rhs.ty()
        )))
    };
    match (lhs, rhs) {
        (Int(a), Int(b)) => match op {
            Add => Ok(Int(a.wrapping_add(b))),
            Sub => Ok(Int(a.wrapping_sub(b))),
            Mul => Ok(Int(a.wrapping_mul(b))),
            Div => {
                if b == 0 {
                    Err(ValueError::DivisionByZero)
                } else {
                    Ok(Int(a.wrapping_div(b)))
                }
            }
            Rem => {
                if b == 0 {
                    Err(ValueError::DivisionByZero)
                } else {
                    Ok(Int(a.wrapping_rem(b)))
                }
            }
            Min => Ok(Int(a.min(b))),
            Max => Ok(Int(a.max(b))),
            Eq => Ok(Bool(a == b)),
            Ne => Ok(Bool(a != b)),
            Lt => Ok(Bool(a < b)),
            Le => Ok(Bool(a <= b)),
            Xor => Ok(Int(a ^ b)),
            And | Or => mismatch(),
        },
        (Bool(a), Bool(b)) => match op {
            And => Ok(Bool(a && b)),
            Or => Ok(Bool(a || b)),
            Xor => Ok(Bool(a ^ b)),
            Eq => Ok(Bool(a == b)),
            Ne => Ok(Bool(a != b)),
            _ => mismatch(),
        },
        _ => mismatch(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_integer_addition() {
        assert_eq!(
            eval_binop(BinOp::Add, ScalarValue::Int(2), ScalarValue::Int(3)),
            Ok(ScalarValue::Int(5))
        );
    }

    #[test]
    fn multiplication_wraps() {
        // Oracle: exact product in 128 bits, truncated mod 2^64.
        let a = i64::MAX;
        let b = 2i64;
        let wide = (a as i128) * (b as i128);
        let expected = (wide as u64) as i64;
        assert_eq!(expected, -2);
        assert_eq!(
            eval_binop(BinOp::Mul, ScalarValue::Int(a), ScalarValue::Int(b)),
            Ok(ScalarValue::Int(expected))
        );
    }

    #[test]
    fn min_of_distances() {
        // Brute-force compare.
        let expected = if 13 < 1 { 13 } else { 1 };
        assert_eq!(
            eval_binop(BinOp::Min, ScalarValue::Int(13), ScalarValue::Int(1)),
            Ok(ScalarValue::Int(expected))
        );
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            eval_binop(BinOp::Div, ScalarValue::Int(1), ScalarValue::Int(0)),
            Err(ValueError::DivisionByZero)
        );
        assert_eq!(
            eval_binop(BinOp::Rem, ScalarValue::Int(1), ScalarValue::Int(0)),
            Err(ValueError::DivisionByZero)
        );
    }

    #[test]
    fn division_truncates_toward_zero() {
        let div = |a, b| eval_binop(BinOp::Div, ScalarValue::Int(a), ScalarValue::Int(b)).unwrap();
        assert_eq!(div(7, 2), ScalarValue::Int(3));
        assert_eq!(div(-7, 2), ScalarValue::Int(-3));
        assert_eq!(div(7, -2), ScalarValue::Int(-3));
        // i64::MIN / -1 wraps instead of trapping.
        assert_eq!(div(i64::MIN, -1), ScalarValue::Int(i64::MIN));
    }

    #[test]
    fn boolean_ops() {
        let t = ScalarValue::Bool(true);
        let f = ScalarValue::Bool(false);
        assert_eq!(eval_binop(BinOp::And, t, f), Ok(f));
        assert_eq!(eval_binop(BinOp::Or, t, f), Ok(t));
        assert_eq!(eval_binop(BinOp::Xor, t, t), Ok(f));
        assert!(eval_binop(BinOp::Add, t, f).is_err());
        assert!(eval_binop(BinOp::Lt, t, f).is_err());
    }

    #[test]
    fn type_mismatch() {
        assert!(eval_binop(BinOp::Add, ScalarValue::Int(1), ScalarValue::Bool(true)).is_err());
    }

    #[test]
    fn row_major_lookup() {
        let a = Value::from_ints(vec![2, 2], vec![1, 2, 3, 4]).unwrap();
        assert_eq!(array_get(&a, &[1, 0]), Ok(ScalarValue::Int(3)));
        assert_eq!(array_get(&a, &[0, 1]), Ok(ScalarValue::Int(2)));
    }

    #[test]
    fn zero_dim_array_is_a_scalar() {
        let a = Value::from_ints(vec![], vec![42]).unwrap();
        assert_eq!(array_get(&a, &[]), Ok(ScalarValue::Int(42)));
        assert_eq!(a, Value::int(42));
    }

    #[test]
    fn out_of_bounds_and_rank_errors() {
        let a = Value::from_ints(vec![3], vec![5, 6, 7]).unwrap();
        assert_eq!(
            array_get(&a, &[3]),
            Err(ValueError::IndexOutOfBounds { index: 3, dim: 0, size: 3 })
        );
        assert_eq!(
            array_get(&a, &[-1]),
            Err(ValueError::IndexOutOfBounds { index: -1, dim: 0, size: 3 })
        );
        assert_eq!(
            array_get(&a, &[0, 0]),
            Err(ValueError::RankMismatch { expected: 1, got: 2 })
        );
    }

    #[test]
    fn malformed_arrays_rejected() {
        assert!(Value::from_ints(vec![2, 2], vec![1, 2, 3]).is_err());
        assert!(Value::new(
            ScalarTy::Int,
            vec![2],
            vec![ScalarValue::Int(1), ScalarValue::Bool(true)]
        )
        .is_err());
    }

    #[test]
    fn value_display() {
        assert_eq!(Value::int(-5).to_string(), "-5");
        assert_eq!(Value::bool(true).to_string(), "true");
        let a = Value::from_ints(vec![2, 2], vec![1, 2, 3, 4]).unwrap();
        assert_eq!(a.to_string(), "int[2,2] [1,2,3,4]");
    }
}
