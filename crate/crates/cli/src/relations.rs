//! Tensor elements named in a relations file.
//!
//! ```json
//! [{"name": "ad_Y1_Z2", "expr": {"ad": [{"word": [2]}, {"word": [5]}]}},
//!  {"name": "ad_X1_Y1-ad_X1_Y2", "expr": {"sum": [
//!     {"expr": {"ad": [{"word": [0]}, {"word": [2]}]}},
//!     {"coeff": -1, "expr": {"ad": [{"word": [0]}, {"word": [3]}]}}]}}]
//! ```
//!
//! Words index the module's basis from 0. A term may carry an integer `coeff`
//! and a root of unity `phase` such as `"1/4"`.

use serde::Deserialize;

use quasi_nichols::oracle::{braided_adjoint, TensorElement};
use quasi_nichols::scalars::{Cyclotomic, Phase};
use quasi_nichols::ydmod::YDModule;
use quasi_nichols::{Error, Result};

#[derive(Deserialize)]
pub struct Relation {
    #[serde(default)]
    pub name: String,
    pub expr: Expr,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expr {
    Word(Vec<usize>),
    Ad(Box<(Expr, Expr)>),
    Sum(Vec<Term>),
}

#[derive(Deserialize)]
pub struct Term {
    #[serde(default = "one")]
    coeff: i64,
    #[serde(default)]
    phase: Option<Phase>,
    expr: Expr,
}

fn one() -> i64 {
    1
}

impl Expr {
    pub fn eval(&self, v: &YDModule) -> Result<TensorElement> {
        match self {
            Expr::Word(w) => TensorElement::basis(v, w),
            Expr::Ad(pair) => braided_adjoint(v, &pair.0.eval(v)?, &pair.1.eval(v)?),
            Expr::Sum(terms) => {
                let mut acc: Option<TensorElement> = None;
                for t in terms {
                    let c = Cyclotomic::from_phase(t.phase.unwrap_or(Phase::ONE));
                    let x = t.expr.eval(v)?.scale(&(&c * &Cyclotomic::from_integer(t.coeff)));
                    acc = Some(match acc {
                        None => x,
                        Some(a) => a.add(&x)?,
                    });
                }
                acc.ok_or_else(|| Error::Invalid("empty sum".into()))
            }
        }
    }
}
