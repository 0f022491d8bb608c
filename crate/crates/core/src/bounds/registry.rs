//! Named bound formulas, selectable at runtime.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::formulas::*;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum FormulaValue {
    Exact(BigUint),
    Real(f64),
}

impl fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaValue::Exact(n) => write!(f, "{n}"),
            FormulaValue::Real(x) => write!(f, "{x}"),
        }
    }
}

pub trait BoundFormula: Send + Sync {
    fn name(&self) -> &'static str;
    /// Argument names, in positional order.
    fn params(&self) -> &'static [&'static str];
    /// What the value bounds, e.g. `W(p+1, 2) >= value`.
    fn claim(&self) -> &'static str;
    fn evaluate(&self, args: &[BigUint]) -> Result<FormulaValue>;
}

fn small<T: TryFrom<u64>>(args: &[BigUint], i: usize, name: &str) -> Result<T> {
    args[i]
        .to_u64()
        .and_then(|v| T::try_from(v).ok())
        .ok_or_else(|| Error::domain(format!("argument {name} = {} is out of range", args[i])))
}

macro_rules! formula {
    ($ty:ident, $name:literal, [$($param:literal),*], $claim:literal, |$args:ident| $body:expr) => {
        struct $ty;
        impl BoundFormula for $ty {
            fn name(&self) -> &'static str { $name }
            fn params(&self) -> &'static [&'static str] { &[$($param),*] }
            fn claim(&self) -> &'static str { $claim }
            fn evaluate(&self, $args: &[BigUint]) -> Result<FormulaValue> { $body }
        }
    };
}

formula!(Berlekamp, "berlekamp", ["p"], "W(p+1, 2) >= value", |a| {
    formula_berlekamp(small(a, 0, "p")?).map(FormulaValue::Exact)
});
formula!(
    BlankenshipPower,
    "blankenship-power",
    ["p", "r"],
    "W(p+1, r) > value",
    |a| {
        formula_blankenship_power(small(a, 0, "p")?, small(a, 1, "r")?).map(FormulaValue::Exact)
    }
);
formula!(Szabo, "szabo", ["k"], "W(k, 2) >= value", |a| {
    formula_szabo(small(a, 0, "k")?).map(FormulaValue::Real)
});
formula!(
    LandmanRobertson,
    "landman-robertson",
    ["p", "q"],
    "W(p+1, q) >= value",
    |a| {
        formula_landman_robertson(small(a, 0, "p")?, small(a, 1, "q")?).map(FormulaValue::Exact)
    }
);
formula!(
    Rabung,
    "rabung",
    ["p", "k"],
    "W(k, r) > value when the block is valid",
    |a| {
        Ok(FormulaValue::Exact(bound_rabung(
            small(a, 0, "p")?,
            checked_k(small(a, 1, "k")?)?,
        )))
    }
);
formula!(
    Zip,
    "zip",
    ["p", "k"],
    "W(k, 2r) > value when the zipped block is valid",
    |a| {
        Ok(FormulaValue::Exact(bound_zip(
            small(a, 0, "p")?,
            checked_k(small(a, 1, "k")?)?,
        )))
    }
);
formula!(
    ZipTwice,
    "zip-twice",
    ["p", "k"],
    "W(k, 4r) > value when the lifted block is valid",
    |a| {
        Ok(FormulaValue::Exact(bound_zip_twice(
            small(a, 0, "p")?,
            checked_k(small(a, 1, "k")?)?,
        )))
    }
);
formula!(
    Blankenship,
    "blankenship",
    ["p", "inner-bound", "k"],
    "W(k, r) > value",
    |a| { bound_blankenship(small(a, 0, "p")?, &a[1], small(a, 2, "k")?).map(FormulaValue::Exact) }
);
formula!(Xu, "xu", ["n", "inner-bound"], "W(k, s t) > value", |a| {
    Ok(FormulaValue::Exact(&a[0] * &a[1] + 1u32))
});

fn checked_k(k: u32) -> Result<u32> {
    if k < 3 {
        return Err(Error::domain(format!(
            "progression length {k} must be at least 3"
        )));
    }
    Ok(k)
}

pub struct FormulaRegistry {
    formulas: BTreeMap<&'static str, Box<dyn BoundFormula>>,
}

impl FormulaRegistry {
    pub fn empty() -> Self {
        Self {
            formulas: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, formula: Box<dyn BoundFormula>) {
        self.formulas.insert(formula.name(), formula);
    }

    pub fn get(&self, name: &str) -> Option<&dyn BoundFormula> {
        self.formulas.get(name).map(|f| f.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.formulas.keys().copied().collect()
    }

    /// Looks up `name` and evaluates it, checking the argument count.
    pub fn evaluate(&self, name: &str, args: &[BigUint]) -> Result<FormulaValue> {
        let formula = self.get(name).ok_or_else(|| {
            Error::domain(format!(
                "unknown formula {name:?}; available: {}",
                self.names().join(", ")
            ))
        })?;
        if args.len() != formula.params().len() {
            return Err(Error::domain(format!(
                "formula {name} takes {} arguments ({}), got {}",
                formula.params().len(),
                formula.params().join(", "),
                args.len()
            )));
        }
        formula.evaluate(args)
    }
}

impl Default for FormulaRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(Berlekamp));
        reg.register(Box::new(BlankenshipPower));
        reg.register(Box::new(Szabo));
        reg.register(Box::new(LandmanRobertson));
        reg.register(Box::new(Rabung));
        reg.register(Box::new(Zip));
        reg.register(Box::new(ZipTwice));
        reg.register(Box::new(Blankenship));
        reg.register(Box::new(Xu));
        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn evaluates_by_name() {
        let reg = FormulaRegistry::default();
        assert_eq!(reg.names().len(), 9);
        let ev = |n: &str, a: &[u64]| reg.evaluate(n, &args(a)).unwrap().to_string();
        assert_eq!(ev("berlekamp", &[5]), "155");
        assert_eq!(ev("landman-robertson", &[5, 3]), "1211");
        assert_eq!(ev("rabung", &[958_485_937, 25]), "23003662489");
        assert_eq!(ev("zip", &[2213, 5]), "17705");
        assert_eq!(ev("blankenship", &[5, 98_741, 5]), "493705");
        assert_eq!(ev("xu", &[139, 1131]), "157210");
    }

    #[test]
    fn rejects_unknown_and_arity() {
        let reg = FormulaRegistry::default();
        assert!(reg.evaluate("nope", &[]).is_err());
        assert!(reg.evaluate("berlekamp", &args(&[5, 5])).is_err());
        assert!(reg.evaluate("rabung", &args(&[11, 2])).is_err());
    }
}
