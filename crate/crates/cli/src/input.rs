use std::fs;
use std::sync::Arc;

use clap::Args;
use leavitt::examples;
use leavitt::graph::{Ambient, Graph};
use leavitt::io::{parse_graph_spec, GraphSpec};

use crate::CliError;

#[derive(Args, Debug)]
pub struct GraphSource {
    /// Graph file (`vertex`, `edge`, `special` lines).
    #[arg(long, global = true, conflicts_with = "example")]
    graph: Option<String>,

    /// Built-in graph: two-loops, loops-and-exit, one-loop, two-cycle, fork,
    /// single-edge, single-vertex, linked-loops, disjoint-loops.
    #[arg(long, global = true)]
    example: Option<String>,

    /// Make this edge special at its source. Repeatable.
    #[arg(long, global = true)]
    special: Vec<String>,
}

fn builtin(name: &str) -> Option<Graph> {
    Some(match name {
        "two-loops" => examples::two_loops(),
        "loops-and-exit" => examples::loops_and_exit(),
        "one-loop" => examples::one_loop(),
        "two-cycle" => examples::two_cycle(),
        "fork" => examples::fork(),
        "single-edge" => examples::single_edge(),
        "single-vertex" => examples::single_vertex(),
        "linked-loops" => examples::linked_loops(),
        "disjoint-loops" => examples::disjoint_loops(),
        _ => return None,
    })
}

pub fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Domain(format!("cannot read {path}: {e}")))
}

impl GraphSource {
    pub fn ambient(&self) -> Result<Arc<Ambient>, CliError> {
        let spec = match (&self.graph, &self.example) {
            (Some(path), _) => parse_graph_spec(&read(path)?)?,
            (None, Some(name)) => GraphSpec {
                graph: builtin(name)
                    .ok_or_else(|| CliError::Usage(format!("unknown example `{name}`")))?,
                special: Default::default(),
            },
            (None, None) => {
                return Err(CliError::Usage(
                    "give --graph FILE or --example NAME".into(),
                ))
            }
        };
        Ok(spec.into_ambient(&self.special)?)
    }
}

/// Scalar field chosen by `LPA_FIELD`: `rational` (default) or `gf:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

impl FieldChoice {
    pub fn from_env() -> Result<FieldChoice, CliError> {
        match std::env::var("LPA_FIELD") {
            Ok(v) => FieldChoice::parse(&v),
            Err(_) => Ok(FieldChoice::Rational),
        }
    }

    pub fn parse(text: &str) -> Result<FieldChoice, CliError> {
        let text = text.trim();
        if text.is_empty() || text == "rational" {
            return Ok(FieldChoice::Rational);
        }
        let p = text
            .strip_prefix("gf:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "LPA_FIELD must be `rational` or `gf:<p>`, got `{text}`"
                ))
            })?;
        if !leavitt::field::SUPPORTED_PRIMES.contains(&p) {
            return Err(CliError::Usage(format!(
                "unsupported prime {p}; choose one of {:?}",
                leavitt::field::SUPPORTED_PRIMES
            )));
        }
        Ok(FieldChoice::Prime(p))
    }

    pub fn name(self) -> String {
        match self {
            FieldChoice::Rational => "rational".into(),
            FieldChoice::Prime(p) => format!("gf:{p}"),
        }
    }
}

/// Runs a generic function with the scalar type picked at run time.
#[macro_export]
macro_rules! with_field {
    ($choice:expr, $f:ident ( $($arg:expr),* )) => {{
        use leavitt::field::{Fp, Rational};
        match $choice {
            $crate::input::FieldChoice::Rational => $f::<Rational>($($arg),*),
            $crate::input::FieldChoice::Prime(2) => $f::<Fp<2>>($($arg),*),
            $crate::input::FieldChoice::Prime(3) => $f::<Fp<3>>($($arg),*),
            $crate::input::FieldChoice::Prime(5) => $f::<Fp<5>>($($arg),*),
            $crate::input::FieldChoice::Prime(7) => $f::<Fp<7>>($($arg),*),
            $crate::input::FieldChoice::Prime(11) => $f::<Fp<11>>($($arg),*),
            $crate::input::FieldChoice::Prime(13) => $f::<Fp<13>>($($arg),*),
            $crate::input::FieldChoice::Prime(101) => $f::<Fp<101>>($($arg),*),
            $crate::input::FieldChoice::Prime(65_521) => $f::<Fp<65_521>>($($arg),*),
            $crate::input::FieldChoice::Prime(1_000_003) => $f::<Fp<1_000_003>>($($arg),*),
            $crate::input::FieldChoice::Prime(2_147_483_647) => $f::<Fp<2_147_483_647>>($($arg),*),
            $crate::input::FieldChoice::Prime(p) => unreachable!("prime {p} rejected when parsing"),
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_choices() {
        assert_eq!(
            FieldChoice::parse("rational").unwrap(),
            FieldChoice::Rational
        );
        assert_eq!(
            FieldChoice::parse("gf:101").unwrap(),
            FieldChoice::Prime(101)
        );
        assert!(matches!(
            FieldChoice::parse("gf:4"),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            FieldChoice::parse("reals"),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn every_supported_prime_dispatches() {
        fn minus_one<K: leavitt::field::Field>() -> String {
            K::from_i64(-1).to_string()
        }
        for &p in leavitt::field::SUPPORTED_PRIMES {
            let choice = FieldChoice::Prime(p);
            assert_eq!(with_field!(choice, minus_one()), (p - 1).to_string());
        }
    }
}
