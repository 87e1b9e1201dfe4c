//! JSON form of [`Poly`]: a list of term records
//! `{"coeff": "p/q", "vars": [["x", i, e], ["a", i, j, e]]}`, highest term first.

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Poly, Var};
use crate::error::Error;

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum VarRecord {
    Gen(String, usize, usize, u32),
    Pos(String, usize, u32),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRecord {
    coeff: String,
    vars: Vec<VarRecord>,
}

pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let parsed: Option<BigRational> = match s.split_once('/') {
        Some((n, d)) => match (n.trim().parse(), d.trim().parse::<num_bigint::BigInt>()) {
            (Ok(n), Ok(d)) if d != 0.into() => Some(BigRational::new(n, d)),
            _ => None,
        },
        None => s.parse().ok().map(BigRational::from_integer),
    };
    parsed.ok_or_else(|| Error::Parse(format!("`{s}` is not a rational number")))
}

impl TryFrom<VarRecord> for (Var, u32) {
    type Error = Error;

    fn try_from(rec: VarRecord) -> Result<Self, Error> {
        match rec {
            VarRecord::Pos(family, i, e) if family == "x" => Ok((Var::pos(i)?, e)),
            VarRecord::Gen(family, i, j, e) if family == "a" => Ok((Var::gen(i, j)?, e)),
            VarRecord::Pos(family, ..) | VarRecord::Gen(family, ..) => Err(Error::Parse(
                format!("unknown variable family `{family}` (or wrong arity)"),
            )),
        }
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms()
            .rev()
            .map(|(m, c)| TermRecord {
                coeff: c.to_string(),
                vars: m
                    .powers()
                    .iter()
                    .map(|&(v, e)| match v {
                        Var::Pos(i) => VarRecord::Pos("x".into(), i, e),
                        Var::Gen(i, j) => VarRecord::Gen("a".into(), i, j, e),
                    })
                    .collect(),
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(records.len());
        for rec in records {
            let c = parse_rational(&rec.coeff).map_err(D::Error::custom)?;
            let powers = rec
                .vars
                .into_iter()
                .map(<(Var, u32)>::try_from)
                .collect::<Result<Vec<_>, _>>()
                .map_err(D::Error::custom)?;
            terms.push((Monomial::from_powers(powers), c));
        }
        Ok(Poly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn json_shape() {
        let p = (&Poly::x(1).pow(2) * &Poly::a(1, 3)).scale(&ratio(-2, 3));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[{"coeff":"-2/3","vars":[["x",1,2],["a",1,3,1]]}]"#);
        assert_eq!(serde_json::from_str::<Poly>(&s).unwrap(), p);
    }

    #[test]
    fn json_rejects_bad_records() {
        assert!(serde_json::from_str::<Poly>(r#"[{"coeff":"1","vars":[["y",1,1]]}]"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"[{"coeff":"1","vars":[["a",2,1,1]]}]"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"[{"coeff":"1/0","vars":[]}]"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"[{"coeff":"q","vars":[]}]"#).is_err());
    }

    #[test]
    fn duplicate_terms_merge() {
        let p: Poly = serde_json::from_str(
            r#"[{"coeff":"1","vars":[["x",1,1]]},{"coeff":"-1","vars":[["x",1,1]]},{"coeff":"7","vars":[]}]"#,
        )
        .unwrap();
        assert_eq!(p, Poly::constant(rat(7)));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-4/6").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational(" 12 ").unwrap(), rat(12));
        assert!(parse_rational("1.5").is_err());
    }
}
