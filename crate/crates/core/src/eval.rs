//! Expression evaluator behind `hardy eval`.
//!
//! ```text
//! expr := '{' (expr (',' expr)*)? '}' | '∅'
//!       | name '(' expr (',' expr)* ')'
//!       | identifier | number
//! ```
//!
//! Functions: `union(a,b)`, `intersect(a,b)`, `munion(a)`, `card(a)`,
//! `vn(n,base)` and `zm(n,base)`. An identifier that is not followed by `(`
//! is an atom.

use std::fmt;

use thiserror::Error;

use crate::hfset::parse::{Cursor, EMPTY_SET_CHAR};
use crate::hfset::{Atom, HfSet, ParseError};
use crate::numerals::{NumeralBase, NumeralSpec, NumeralSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {offset}: {message}")]
pub struct EvalError {
    pub offset: usize,
    pub message: String,
}

impl From<ParseError> for EvalError {
    fn from(e: ParseError) -> Self {
        EvalError {
            offset: e.offset,
            message: format!("expected {}", e.expected),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Set(HfSet),
    Number(usize),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Set(s) => write!(f, "{s}"),
            Value::Number(n) => write!(f, "{n}"),
        }
    }
}

/// A value together with the byte offset of the expression producing it.
struct Spanned {
    offset: usize,
    value: Value,
}

impl Spanned {
    fn type_error(&self, message: impl Into<String>) -> EvalError {
        EvalError {
            offset: self.offset,
            message: message.into(),
        }
    }

    /// A set-node operand.
    fn set(self, func: &str) -> Result<HfSet, EvalError> {
        match &self.value {
            Value::Set(s @ HfSet::Set(_)) => Ok(s.clone()),
            Value::Set(HfSet::Atom(a)) => {
                Err(self.type_error(format!("{func} expects a set, got atom `{a}`")))
            }
            Value::Number(n) => {
                Err(self.type_error(format!("{func} expects a set, got number {n}")))
            }
        }
    }

    fn element(self) -> Result<HfSet, EvalError> {
        match self.value {
            Value::Set(s) => Ok(s),
            Value::Number(n) => Err(self.type_error(format!(
                "set elements must be sets or atoms, got number {n}"
            ))),
        }
    }

    fn number(self, func: &str) -> Result<usize, EvalError> {
        match &self.value {
            Value::Number(n) => Ok(*n),
            other => Err(self.type_error(format!("{func} expects a depth, got `{other}`"))),
        }
    }

    fn base(self, func: &str) -> Result<NumeralBase, EvalError> {
        match &self.value {
            Value::Set(HfSet::Atom(a)) => Ok(NumeralBase::Atom(a.clone())),
            Value::Set(s) if s.is_empty_set() => Ok(NumeralBase::Empty),
            other => Err(self.type_error(format!(
                "{func} expects an atom or ∅ as base, got `{other}`"
            ))),
        }
    }
}

pub fn evaluate(src: &str) -> Result<Value, EvalError> {
    let mut cur = Cursor::new(src);
    let v = expr(&mut cur)?;
    cur.finish()?;
    Ok(v.value)
}

fn expr(cur: &mut Cursor<'_>) -> Result<Spanned, EvalError> {
    cur.skip_ws();
    let offset = cur.pos();
    if cur.eat(EMPTY_SET_CHAR) {
        return Ok(Spanned {
            offset,
            value: Value::Set(HfSet::empty()),
        });
    }
    if cur.eat('{') {
        let mut children = Vec::new();
        if !cur.eat('}') {
            loop {
                children.push(expr(cur)?.element()?);
                if cur.eat('}') {
                    break;
                }
                cur.expect(',', "',' or '}'")?;
            }
        }
        return Ok(Spanned {
            offset,
            value: Value::Set(HfSet::set_of(children)),
        });
    }
    if let Some(digits) = cur.number() {
        let n = digits.parse().map_err(|_| EvalError {
            offset,
            message: format!("number {digits} is too large"),
        })?;
        return Ok(Spanned {
            offset,
            value: Value::Number(n),
        });
    }
    if let Some(name) = cur.identifier() {
        if cur.eat('(') {
            let args = arguments(cur)?;
            return call(name, offset, args).map(|value| Spanned { offset, value });
        }
        let atom = Atom::new(name).expect("lexer produced a valid label");
        return Ok(Spanned {
            offset,
            value: Value::Set(HfSet::Atom(atom)),
        });
    }
    Err(cur.error("expression").into())
}

fn arguments(cur: &mut Cursor<'_>) -> Result<Vec<Spanned>, EvalError> {
    let mut args = Vec::new();
    if cur.eat(')') {
        return Ok(args);
    }
    loop {
        args.push(expr(cur)?);
        if cur.eat(')') {
            return Ok(args);
        }
        cur.expect(',', "',' or ')'")?;
    }
}

fn call(name: &str, offset: usize, args: Vec<Spanned>) -> Result<Value, EvalError> {
    let arity = match name {
        "union" | "intersect" | "vn" | "zm" => 2,
        "munion" | "card" => 1,
        _ => {
            return Err(EvalError {
                offset,
                message: format!("unknown function `{name}`"),
            });
        }
    };
    if args.len() != arity {
        return Err(EvalError {
            offset,
            message: format!("{name} takes {arity} argument(s), got {}", args.len()),
        });
    }
    let mut args = args.into_iter();
    let mut next = || args.next().expect("arity checked");
    let value = match name {
        "union" => {
            let a = next().set(name)?;
            let b = next().set(name)?;
            Value::Set(a.unite(&b).expect("operands are set-nodes"))
        }
        "intersect" => {
            let a = next().set(name)?;
            let b = next().set(name)?;
            Value::Set(a.intersect(&b).expect("operands are set-nodes"))
        }
        "munion" => Value::Set(
            next()
                .set(name)?
                .monadic_union()
                .expect("operand is a set-node"),
        ),
        "card" => Value::Number(
            next()
                .set(name)?
                .cardinality()
                .expect("operand is a set-node"),
        ),
        "vn" | "zm" => {
            let depth_arg = next();
            let depth_offset = depth_arg.offset;
            let depth = depth_arg.number(name)?;
            let base = next().base(name)?;
            let system = if name == "vn" {
                NumeralSystem::VonNeumann
            } else {
                NumeralSystem::Zermelo
            };
            let spec = NumeralSpec {
                system,
                depth,
                base,
            };
            if depth > spec.input_limit() {
                return Err(EvalError {
                    offset: depth_offset,
                    message: format!(
                        "{name} depth {depth} exceeds the limit of {}",
                        spec.input_limit()
                    ),
                });
            }
            Value::Set(spec.build())
        }
        _ => unreachable!(),
    };
    Ok(value)
}
