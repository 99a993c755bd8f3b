//! JSON term-list form: `{"vars":[..],"terms":[{"c":[re_num,re_den,im_num,im_den],"e":[..]}]}`.
//!
//! Integers are carried with arbitrary precision in both directions.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::{var_list, LaurentPoly};
use crate::scalar::GaussianRational;

fn big(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer literal is valid JSON")
}

fn read_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().map_err(|_| Error::Parse(format!("not an integer: {n}"))),
        _ => Err(Error::Parse(format!("expected integer, got {v}"))),
    }
}

pub fn poly_to_json(p: &LaurentPoly<GaussianRational>) -> Value {
    let terms: Vec<Value> = p
        .display_terms()
        .into_iter()
        .map(|(e, c)| {
            json!({
                "c": [big(c.re.numer()), big(c.re.denom()), big(c.im.numer()), big(c.im.denom())],
                "e": e,
            })
        })
        .collect();
    json!({ "vars": p.vars().as_slice(), "terms": terms })
}

pub fn poly_to_json_string(p: &LaurentPoly<GaussianRational>) -> String {
    poly_to_json(p).to_string()
}

pub fn poly_from_json(v: &Value) -> Result<LaurentPoly<GaussianRational>> {
    let vars: Vec<String> = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `vars`".into()))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Parse("variable names must be strings".into())))
        .collect::<Result<_>>()?;
    let vars = var_list(&vars);
    let mut p = LaurentPoly::zero(&vars);
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing `terms`".into()))?;
    for t in terms {
        let c = t.get("c").and_then(Value::as_array).ok_or_else(|| Error::Parse("term without `c`".into()))?;
        if c.len() != 4 {
            return Err(Error::Parse("coefficient must have four integers".into()));
        }
        let parts: Vec<BigInt> = c.iter().map(read_big).collect::<Result<_>>()?;
        if parts[1] == BigInt::from(0) || parts[3] == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        let coeff = GaussianRational::new(
            BigRational::new(parts[0].clone(), parts[1].clone()),
            BigRational::new(parts[2].clone(), parts[3].clone()),
        );
        let e: Vec<i32> = t
            .get("e")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("term without `e`".into()))?
            .iter()
            .map(|x| x.as_i64().and_then(|k| i32::try_from(k).ok()).ok_or_else(|| Error::Parse("bad exponent".into())))
            .collect::<Result<_>>()?;
        if e.len() != vars.len() {
            return Err(Error::Parse("exponent vector length differs from variable count".into()));
        }
        p.add_term(e, coeff);
    }
    Ok(p)
}

pub fn poly_from_json_str(s: &str) -> Result<LaurentPoly<GaussianRational>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    poly_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let p = LaurentPoly::parse("(1+2i)*y^2*z^-1 + 3").unwrap();
        let s = poly_to_json_string(&p);
        assert_eq!(s, r#"{"vars":["y","z"],"terms":[{"c":[1,1,2,1],"e":[2,-1]},{"c":[3,1,0,1],"e":[0,0]}]}"#);
        let back = poly_from_json_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(poly_to_json_string(&back), s);
    }

    #[test]
    fn big_coefficients_survive() {
        let p = LaurentPoly::parse("123456789012345678901234567890/7*x").unwrap();
        let back = poly_from_json_str(&poly_to_json_string(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_malformed() {
        assert!(poly_from_json_str(r#"{"vars":["y"],"terms":[{"c":[1,0,0,1],"e":[1]}]}"#).is_err());
        assert!(poly_from_json_str(r#"{"vars":["y"],"terms":[{"c":[1,1,0,1],"e":[1,2]}]}"#).is_err());
    }
}
