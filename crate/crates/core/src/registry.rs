//! Name-based lookup of functors and refinement strategies.
//!
//! A functor spec is `name` or `name:argument`, e.g. `nat`, `lam:2`,
//! `lts:a,b`.

use std::sync::Arc;

use indexmap::IndexMap;

use crate::coinductive::{NaiveRefinement, RefinementStrategy, SignatureRefinement};
use crate::container::{FunctorRef, IndexedContainer, PfinFunctor};
use crate::error::{Error, Result};
use crate::stdlib;

type FunctorFactory = Box<dyn Fn(Option<&str>) -> Result<FunctorRef> + Send + Sync>;

struct FunctorEntry {
    usage: &'static str,
    factory: FunctorFactory,
}

/// Functors by name.
pub struct FunctorRegistry {
    entries: IndexMap<String, FunctorEntry>,
}

fn no_argument(name: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        None => Ok(()),
        Some(a) => Err(Error::Unknown {
            kind: "functor",
            name: format!("{name}:{a}"),
        }),
    }
}

impl FunctorRegistry {
    pub fn empty() -> Self {
        FunctorRegistry {
            entries: IndexMap::new(),
        }
    }

    /// The standard functors.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register("nat", "nat", |arg| {
            no_argument("nat", arg)?;
            Ok(Arc::new(stdlib::nat_container()).as_functor())
        });
        reg.register("odds-evens", "odds-evens", |arg| {
            no_argument("odds-evens", arg)?;
            Ok(Arc::new(stdlib::odds_evens_container()).as_functor())
        });
        reg.register("lam", "lam:<n_max>", |arg| {
            let n: usize = arg
                .and_then(|a| a.parse().ok())
                .ok_or_else(|| Error::Unknown {
                    kind: "functor",
                    name: format!("lam:{}", arg.unwrap_or("")),
                })?;
            Ok(Arc::new(stdlib::lam_container(n)?).as_functor())
        });
        reg.register("pfin", "pfin", |arg| {
            no_argument("pfin", arg)?;
            Ok(Arc::new(PfinFunctor))
        });
        reg.register("lts", "lts:<label>,<label>,...", |arg| {
            let labels: Vec<&str> = arg.map(|a| a.split(',').collect()).unwrap_or_default();
            if labels.iter().any(|l| l.is_empty()) {
                return Err(Error::Unknown {
                    kind: "functor",
                    name: format!("lts:{}", arg.unwrap_or("")),
                });
            }
            Ok(Arc::new(stdlib::lts_functor(labels)?))
        });
        reg
    }

    pub fn register<F>(&mut self, name: &str, usage: &'static str, factory: F)
    where
        F: Fn(Option<&str>) -> Result<FunctorRef> + Send + Sync + 'static,
    {
        self.entries.insert(
            name.to_string(),
            FunctorEntry {
                usage,
                factory: Box::new(factory),
            },
        );
    }

    /// Registers a container under its own name.
    pub fn register_container(&mut self, c: IndexedContainer) {
        let c = Arc::new(c);
        let name = c.name().to_string();
        self.register(&name, "container", move |arg| {
            no_argument(c.name(), arg)?;
            Ok(c.as_functor())
        });
    }

    pub fn resolve(&self, spec: &str) -> Result<FunctorRef> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let entry = self.entries.get(name).ok_or_else(|| Error::Unknown {
            kind: "functor",
            name: spec.to_string(),
        })?;
        (entry.factory)(arg)
    }

    pub fn usages(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.values().map(|e| e.usage)
    }
}

impl Default for FunctorRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Refinement strategies by name; the first registered one is the default.
pub struct StrategyRegistry {
    entries: IndexMap<&'static str, Box<dyn RefinementStrategy>>,
}

impl StrategyRegistry {
    pub fn builtin() -> Self {
        let mut reg = StrategyRegistry {
            entries: IndexMap::new(),
        };
        reg.register(Box::new(NaiveRefinement));
        reg.register(Box::new(SignatureRefinement));
        reg
    }

    pub fn register(&mut self, strategy: Box<dyn RefinementStrategy>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn RefinementStrategy> {
        self.entries
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::Unknown {
                kind: "strategy",
                name: name.to_string(),
            })
    }

    pub fn default_strategy(&self) -> &dyn RefinementStrategy {
        self.entries[0].as_ref()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_every_stdlib_name() {
        let reg = FunctorRegistry::builtin();
        for e in stdlib::functors() {
            assert_eq!(reg.resolve(&e.name).unwrap().name(), e.name);
        }
        assert_eq!(reg.resolve("lam:3").unwrap().name(), "lam:3");
    }

    #[test]
    fn rejects_unknown_or_malformed_specs() {
        let reg = FunctorRegistry::builtin();
        for bad in [
            "list", "lam", "lam:x", "lam:0", "nat:1", "lts:", "lts:a,,b", "lts:a,a",
        ] {
            assert!(reg.resolve(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn strategies() {
        let reg = StrategyRegistry::builtin();
        assert_eq!(reg.default_strategy().name(), "naive");
        assert_eq!(reg.names().collect::<Vec<_>>(), ["naive", "signature"]);
        assert!(reg.get("paige-tarjan").is_err());
    }
}
