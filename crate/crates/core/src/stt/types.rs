use std::fmt;
use std::sync::Arc;

/// Simple types over individuals, worlds and truth values.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Type {
    Indiv,
    World,
    Bool,
    Arrow(Arc<Type>, Arc<Type>),
}

impl Type {
    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Arc::new(dom), Arc::new(cod))
    }

    /// Right-nested arrow `a1 > ... > an > result`.
    pub fn curried(args: impl IntoIterator<Item = Type>, result: Type) -> Type {
        let args: Vec<Type> = args.into_iter().collect();
        args.into_iter().rev().fold(result, |acc, a| Type::arrow(a, acc))
    }

    /// Lifted propositions, `$w > $o`.
    pub fn lifted() -> Type {
        Type::arrow(Type::World, Type::Bool)
    }

    /// Properties of individuals, `$i > $w > $o`.
    pub fn property() -> Type {
        Type::arrow(Type::Indiv, Type::lifted())
    }

    /// Type of the positivity constant, `($i > $w > $o) > $w > $o`.
    pub fn positivity() -> Type {
        Type::arrow(Type::property(), Type::lifted())
    }

    /// Type of the accessibility relation, `$w > $w > $o`.
    pub fn accessibility() -> Type {
        Type::arrow(Type::World, Type::lifted())
    }

    pub fn as_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Arrow(d, c) => Some((d, c)),
            _ => None,
        }
    }

    pub fn is_arrow(&self) -> bool {
        matches!(self, Type::Arrow(..))
    }

    /// Argument types and final result of a curried function type.
    pub fn uncurry(&self) -> (Vec<&Type>, &Type) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Type::Arrow(d, c) = cur {
            args.push(&**d);
            cur = c;
        }
        (args, cur)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Indiv => f.write_str("$i"),
            Type::World => f.write_str("$w"),
            Type::Bool => f.write_str("$o"),
            Type::Arrow(d, c) => {
                if d.is_arrow() {
                    write!(f, "({d}) > {c}")
                } else {
                    write!(f, "{d} > {c}")
                }
            }
        }
    }
}
