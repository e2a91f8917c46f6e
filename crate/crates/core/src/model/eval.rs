use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use super::finite::FiniteModel;
use crate::modal::{Signature, ACCESS, POSITIVE};
use crate::stt::{self, Logic, Name, Term, Type, TypeError};

/// Largest function domain the evaluator will enumerate.
const MAX_DOMAIN: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(Name),
    #[error("constant `{0}` has no interpretation")]
    Uninterpreted(Name),
    #[error("value for `{0}` does not have shape {1}")]
    Shape(Name, Type),
    #[error("type {0} is too large to enumerate")]
    TooLarge(Type),
    #[error("expected a formula, found a term of type {0}")]
    NotFormula(Type),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// A semantic value: truth value, individual, world or a total function
/// table indexed by the canonical index of its argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SemValue {
    Bool(bool),
    Indiv(usize),
    World(usize),
    Function(Vec<SemValue>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Sizes {
    pub worlds: u32,
    pub indivs: u32,
}

impl Sizes {
    pub(crate) fn of(m: &FiniteModel) -> Sizes {
        Sizes { worlds: m.worlds() as u32, indivs: m.indivs() as u32 }
    }
}

/// How values of a type are laid out.
///
/// Function types whose whole graph fits in 64 bits are packed; the segment
/// for argument index `k` starts at bit `k * width(codomain)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Repr {
    Elem(u32),
    Bits(u32),
    Table(u64, Box<Repr>),
}

impl Repr {
    pub(crate) fn of(ty: &Type, sizes: Sizes) -> Result<Repr, EvalError> {
        Ok(match ty {
            Type::Indiv => Repr::Elem(sizes.indivs),
            Type::World => Repr::Elem(sizes.worlds),
            Type::Bool => Repr::Bits(1),
            Type::Arrow(a, b) => {
                let dom = Repr::of(a, sizes)?.card().ok_or_else(|| EvalError::TooLarge(ty.clone()))?;
                match Repr::of(b, sizes)? {
                    Repr::Bits(w) if dom * u64::from(w) <= 64 => Repr::Bits(dom as u32 * w),
                    cod => Repr::Table(dom, Box::new(cod)),
                }
            }
        })
    }

    /// Number of values, when small enough to enumerate.
    fn card(&self) -> Option<u64> {
        match self {
            Repr::Elem(n) => Some(u64::from(*n)),
            Repr::Bits(w) if 1u64 << w.min(&63) <= MAX_DOMAIN => Some(1 << w),
            _ => None,
        }
    }

    fn width(&self) -> u32 {
        match self {
            Repr::Bits(w) => *w,
            _ => 0,
        }
    }

    fn element(&self, k: u64) -> Value {
        match self {
            Repr::Elem(_) => Value::Elem(k as u32),
            Repr::Bits(w) => Value::Bits(k, mask(*w)),
            Repr::Table(..) => unreachable!("tables are never enumerated"),
        }
    }

    fn unknown(&self) -> Value {
        match self {
            Repr::Bits(_) => Value::Bits(0, 0),
            _ => Value::Unknown,
        }
    }
}

fn mask(w: u32) -> u64 {
    if w >= 64 {
        u64::MAX
    } else {
        (1 << w) - 1
    }
}

/// Runtime values of the three-valued evaluator. `Bits(val, known)` keeps
/// `val ⊆ known`; a zero bit of `known` is undetermined.
#[derive(Clone, Debug)]
pub(crate) enum Value {
    Elem(u32),
    Bits(u64, u64),
    Table(Arc<[Value]>),
    Unknown,
}

const TRUE: Value = Value::Bits(1, 1);
const FALSE: Value = Value::Bits(0, 1);
const UNKNOWN: Value = Value::Bits(0, 0);

impl Value {
    pub(crate) fn truth(&self) -> Option<bool> {
        match self {
            Value::Bits(v, k) if k & 1 == 1 => Some(v & 1 == 1),
            _ => None,
        }
    }

    fn bool(b: bool) -> Value {
        if b {
            TRUE
        } else {
            FALSE
        }
    }

    fn index(&self, repr: &Repr) -> Option<u64> {
        match (self, repr) {
            (Value::Elem(i), _) => Some(u64::from(*i)),
            (Value::Bits(v, k), Repr::Bits(w)) if *k == mask(*w) => Some(*v),
            _ => None,
        }
    }

    fn bits(&self) -> (u64, u64) {
        match self {
            Value::Bits(v, k) => (*v, *k),
            _ => (0, 0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Bin {
    And,
    Or,
    Imp,
    Iff,
}

#[derive(Clone, Debug)]
pub(crate) enum Code {
    Var(u32),
    Slot(u32),
    Lit(Value),
    Not(Box<Code>),
    Bin(Bin, Box<Code>, Box<Code>),
    /// Quantifier over a lambda body.
    Quant {
        all: bool,
        dom: Repr,
        card: u64,
        body: Box<Code>,
    },
    /// Quantifier applied to an arbitrary predicate.
    QuantApp {
        all: bool,
        card: u64,
        pred: Box<Code>,
    },
    App {
        fun: Box<Code>,
        arg: Box<Code>,
        dom: Repr,
        cod: Repr,
    },
    Beta {
        arg: Box<Code>,
        body: Box<Code>,
    },
    Lam {
        dom: Repr,
        card: u64,
        body: Box<Code>,
        cod: Repr,
    },
}

/// Maps constant and free-variable names to slots of an interpretation.
#[derive(Clone, Debug, Default)]
pub(crate) struct Scope {
    consts: HashMap<Name, (u32, Type)>,
    frees: HashMap<Name, (u32, Type)>,
    len: u32,
}

impl Scope {
    pub(crate) fn add_const(&mut self, name: &Name, ty: Type) -> u32 {
        let slot = self.len;
        self.consts.insert(name.clone(), (slot, ty));
        self.len += 1;
        slot
    }

    pub(crate) fn add_free(&mut self, name: &Name, ty: Type) -> u32 {
        let slot = self.len;
        self.frees.insert(name.clone(), (slot, ty));
        self.len += 1;
        slot
    }

    pub(crate) fn len(&self) -> usize {
        self.len as usize
    }
}

pub(crate) struct Compiler<'a> {
    pub sizes: Sizes,
    pub scope: &'a Scope,
}

impl Compiler<'_> {
    pub(crate) fn compile(&self, t: &Term) -> Result<(Code, Type), EvalError> {
        self.go(t, &mut Vec::new())
    }

    pub(crate) fn compile_formula(&self, t: &Term) -> Result<Code, EvalError> {
        match self.compile(t)? {
            (code, Type::Bool) => Ok(code),
            (_, ty) => Err(EvalError::NotFormula(ty)),
        }
    }

    fn repr(&self, ty: &Type) -> Result<Repr, EvalError> {
        Repr::of(ty, self.sizes)
    }

    fn domain(&self, ty: &Type) -> Result<(Repr, u64), EvalError> {
        let r = self.repr(ty)?;
        let card = r.card().ok_or_else(|| EvalError::TooLarge(ty.clone()))?;
        Ok((r, card))
    }

    fn go(&self, t: &Term, bound: &mut Vec<Type>) -> Result<(Code, Type), EvalError> {
        let (head, args) = t.strip_app();
        if let Term::Logic(l) = head {
            let b = |op, bound: &mut Vec<Type>| -> Result<(Code, Type), EvalError> {
                let (x, _) = self.go(args[0], bound)?;
                let (y, _) = self.go(args[1], bound)?;
                Ok((Code::Bin(op, Box::new(x), Box::new(y)), Type::Bool))
            };
            match (l, args.len()) {
                (Logic::Not, 1) => {
                    let (x, _) = self.go(args[0], bound)?;
                    return Ok((Code::Not(Box::new(x)), Type::Bool));
                }
                (Logic::And, 2) => return b(Bin::And, bound),
                (Logic::Or, 2) => return b(Bin::Or, bound),
                (Logic::Imp, 2) => return b(Bin::Imp, bound),
                (Logic::Iff, 2) => return b(Bin::Iff, bound),
                (Logic::Forall(ty) | Logic::Exists(ty), 1) => {
                    let all = matches!(l, Logic::Forall(_));
                    let (dom, card) = self.domain(ty)?;
                    if let Term::Lam(_, _, body) = args[0] {
                        bound.push(ty.clone());
                        let r = self.go(body, bound);
                        bound.pop();
                        let (body, _) = r?;
                        return Ok((Code::Quant { all, dom, card, body: Box::new(body) }, Type::Bool));
                    }
                    let (pred, _) = self.go(args[0], bound)?;
                    return Ok((Code::QuantApp { all, card, pred: Box::new(pred) }, Type::Bool));
                }
                _ => {}
            }
        }
        match t {
            Term::Bound(i) => {
                let ty = bound
                    .len()
                    .checked_sub(*i as usize + 1)
                    .map(|k| bound[k].clone())
                    .ok_or(TypeError::LooseBound(*i))?;
                Ok((Code::Var(*i), ty))
            }
            Term::Free(n) => {
                let (slot, ty) = self.scope.frees.get(n).ok_or_else(|| EvalError::Unbound(n.clone()))?;
                Ok((Code::Slot(*slot), ty.clone()))
            }
            Term::Const(n, ty) => {
                let (slot, _) = self.scope.consts.get(n).ok_or_else(|| EvalError::Uninterpreted(n.clone()))?;
                Ok((Code::Slot(*slot), ty.clone()))
            }
            Term::Logic(l) => Ok((Code::Lit(self.logic_table(l)?), l.ty())),
            Term::App(f, a) => {
                if let Term::Lam(_, ty, body) = &**f {
                    let (arg, _) = self.go(a, bound)?;
                    bound.push(ty.clone());
                    let r = self.go(body, bound);
                    bound.pop();
                    let (body, bty) = r?;
                    return Ok((Code::Beta { arg: Box::new(arg), body: Box::new(body) }, bty));
                }
                let (fun, fty) = self.go(f, bound)?;
                let (arg, aty) = self.go(a, bound)?;
                let (d, c) = match &fty {
                    Type::Arrow(d, c) if **d == aty => ((**d).clone(), (**c).clone()),
                    _ => {
                        return Err(TypeError::TypeMismatch {
                            expected: fty.clone(),
                            found: aty,
                            position: stt::Position(Vec::new()),
                        }
                        .into())
                    }
                };
                let dom = self.repr(&d)?;
                let cod = self.repr(&c)?;
                Ok((Code::App { fun: Box::new(fun), arg: Box::new(arg), dom, cod }, c))
            }
            Term::Lam(_, ty, body) => {
                let (dom, card) = self.domain(ty)?;
                bound.push(ty.clone());
                let r = self.go(body, bound);
                bound.pop();
                let (body, bty) = r?;
                let cod = self.repr(&bty)?;
                Ok((Code::Lam { dom, card, body: Box::new(body), cod }, Type::arrow(ty.clone(), bty)))
            }
        }
    }

    /// Graph of an unapplied logical constant.
    fn logic_table(&self, l: &Logic) -> Result<Value, EvalError> {
        let table = |w: u32, v: u64| Value::Bits(v, mask(w));
        Ok(match l {
            Logic::True => TRUE,
            Logic::False => FALSE,
            Logic::Not => table(2, 0b01),
            Logic::And => table(4, 0b1000),
            Logic::Or => table(4, 0b1110),
            Logic::Imp => table(4, 0b1011),
            Logic::Iff => table(4, 0b1001),
            Logic::Forall(ty) | Logic::Exists(ty) => {
                let qty = l.ty();
                let (_, card) = self.domain(ty)?;
                let preds = 1u64 << card.min(63);
                let all = matches!(l, Logic::Forall(_));
                let top = mask(card as u32);
                let holds = |p: u64| if all { p == top } else { p != 0 };
                match self.repr(&qty)? {
                    Repr::Bits(w) => {
                        let mut v = 0;
                        for p in 0..preds {
                            if holds(p) {
                                v |= 1 << p;
                            }
                        }
                        table(w, v)
                    }
                    _ => Value::Table((0..preds).map(|p| Value::bool(holds(p))).collect()),
                }
            }
        })
    }
}

/// Executes compiled code against an interpretation of the slots.
pub(crate) struct Machine {
    pub slots: Vec<Value>,
    stack: Vec<Value>,
}

impl Machine {
    pub(crate) fn new(slots: Vec<Value>) -> Self {
        Machine { slots, stack: Vec::new() }
    }

    pub(crate) fn run(&mut self, code: &Code) -> Value {
        match code {
            Code::Var(i) => self.stack[self.stack.len() - 1 - *i as usize].clone(),
            Code::Slot(s) => self.slots[*s as usize].clone(),
            Code::Lit(v) => v.clone(),
            Code::Not(a) => match self.run(a).truth() {
                Some(b) => Value::bool(!b),
                None => UNKNOWN,
            },
            Code::Bin(op, a, b) => self.binary(*op, a, b),
            Code::Quant { all, dom, card, body } => {
                let mut unknown = false;
                for k in 0..*card {
                    self.stack.push(dom.element(k));
                    let v = self.run(body).truth();
                    self.stack.pop();
                    match v {
                        Some(b) if b != *all => return Value::bool(b),
                        None => unknown = true,
                        _ => {}
                    }
                }
                if unknown {
                    UNKNOWN
                } else {
                    Value::bool(*all)
                }
            }
            Code::QuantApp { all, card, pred } => {
                let f = self.run(pred);
                let mut unknown = false;
                for k in 0..*card {
                    match apply(&f, Some(k), &Repr::Bits(1)).truth() {
                        Some(b) if b != *all => return Value::bool(b),
                        None => unknown = true,
                        _ => {}
                    }
                }
                if unknown {
                    UNKNOWN
                } else {
                    Value::bool(*all)
                }
            }
            Code::App { fun, arg, dom, cod } => {
                let f = self.run(fun);
                let a = self.run(arg);
                apply(&f, a.index(dom), cod)
            }
            Code::Beta { arg, body } => {
                let a = self.run(arg);
                self.stack.push(a);
                let v = self.run(body);
                self.stack.pop();
                v
            }
            Code::Lam { dom, card, body, cod } => match cod {
                Repr::Bits(w) if *card * u64::from(*w) <= 64 => {
                    let (mut val, mut known) = (0u64, 0u64);
                    for k in 0..*card {
                        self.stack.push(dom.element(k));
                        let (v, kn) = self.run(body).bits();
                        self.stack.pop();
                        let shift = k as u32 * w;
                        val |= v << shift;
                        known |= kn << shift;
                    }
                    Value::Bits(val, known)
                }
                _ => {
                    let mut rows = Vec::with_capacity(*card as usize);
                    for k in 0..*card {
                        self.stack.push(dom.element(k));
                        rows.push(self.run(body));
                        self.stack.pop();
                    }
                    Value::Table(rows.into())
                }
            },
        }
    }

    fn binary(&mut self, op: Bin, a: &Code, b: &Code) -> Value {
        let x = self.run(a).truth();
        match (op, x) {
            (Bin::And, Some(false)) => return FALSE,
            (Bin::Or, Some(true)) => return TRUE,
            (Bin::Imp, Some(false)) => return TRUE,
            _ => {}
        }
        let y = self.run(b).truth();
        let r = match op {
            Bin::And => match (x, y) {
                (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Bin::Or => match (x, y) {
                (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
            Bin::Imp => match (x, y) {
                (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
            Bin::Iff => match (x, y) {
                (Some(p), Some(q)) => Some(p == q),
                _ => None,
            },
        };
        r.map_or(UNKNOWN, Value::bool)
    }
}

fn apply(f: &Value, index: Option<u64>, cod: &Repr) -> Value {
    let Some(k) = index else {
        return cod.unknown();
    };
    match f {
        Value::Bits(v, kn) => {
            let w = cod.width();
            let shift = (k * u64::from(w)) as u32;
            Value::Bits((v >> shift) & mask(w), (kn >> shift) & mask(w))
        }
        Value::Table(rows) => rows[k as usize].clone(),
        _ => cod.unknown(),
    }
}

/// Converts a semantic value to the runtime layout of `ty`.
pub(crate) fn encode(v: &SemValue, ty: &Type, sizes: Sizes) -> Option<Value> {
    match (v, ty) {
        (SemValue::Bool(b), Type::Bool) => Some(Value::bool(*b)),
        (SemValue::Indiv(i), Type::Indiv) if (*i as u32) < sizes.indivs => Some(Value::Elem(*i as u32)),
        (SemValue::World(w), Type::World) if (*w as u32) < sizes.worlds => Some(Value::Elem(*w as u32)),
        (SemValue::Function(rows), Type::Arrow(_, c)) => match Repr::of(ty, sizes).ok()? {
            Repr::Bits(total) => {
                if rows.len() as u64 * u64::from(Repr::of(c, sizes).ok()?.width()) != u64::from(total) {
                    return None;
                }
                let w = Repr::of(c, sizes).ok()?.width();
                let mut val = 0;
                for (k, r) in rows.iter().enumerate() {
                    let (v, _) = encode(r, c, sizes)?.bits();
                    val |= v << (k as u32 * w);
                }
                Some(Value::Bits(val, mask(total)))
            }
            Repr::Table(dom, _) => {
                if rows.len() as u64 != dom {
                    return None;
                }
                let rows: Option<Vec<Value>> = rows.iter().map(|r| encode(r, c, sizes)).collect();
                Some(Value::Table(rows?.into()))
            }
            Repr::Elem(_) => None,
        },
        _ => None,
    }
}

/// Converts a fully determined runtime value back to a semantic value.
pub(crate) fn decode(v: &Value, ty: &Type, sizes: Sizes) -> Option<SemValue> {
    match (v, ty) {
        (Value::Bits(..), Type::Bool) => v.truth().map(SemValue::Bool),
        (Value::Elem(i), Type::Indiv) => Some(SemValue::Indiv(*i as usize)),
        (Value::Elem(w), Type::World) => Some(SemValue::World(*w as usize)),
        (_, Type::Arrow(d, c)) => {
            let card = Repr::of(d, sizes).ok()?.card()?;
            let cod = Repr::of(c, sizes).ok()?;
            (0..card)
                .map(|k| decode(&apply(v, Some(k), &cod), c, sizes))
                .collect::<Option<Vec<_>>>()
                .map(SemValue::Function)
        }
        _ => None,
    }
}

/// Slot layout shared by evaluation and search: `r`, `pos`, then each
/// definition in order.
pub(crate) struct Layout {
    pub scope: Scope,
    pub defs: Vec<Code>,
    /// Whether each definition (transitively) mentions `pos`.
    pub def_uses_pos: Vec<bool>,
}

pub(crate) const ACCESS_SLOT: usize = 0;
pub(crate) const POSITIVE_SLOT: usize = 1;

impl Layout {
    pub(crate) fn new(sig: &Signature, sizes: Sizes) -> Result<Layout, EvalError> {
        let mut scope = Scope::default();
        scope.add_const(&Name::from(ACCESS), Type::accessibility());
        scope.add_const(&Name::from(POSITIVE), Type::positivity());
        let mut defs = Vec::new();
        let mut def_uses_pos = Vec::new();
        for d in sig.definitions() {
            let code = Compiler { sizes, scope: &scope }.compile(&d.definiens)?.0;
            let uses = stt::constants(&d.definiens).iter().any(|(n, _)| {
                &**n == POSITIVE || sig.definitions().iter().position(|e| e.name == *n).is_some_and(|i| def_uses_pos[i])
            });
            defs.push(code);
            def_uses_pos.push(uses);
            scope.add_const(&d.name, d.ty.clone());
        }
        Ok(Layout { scope, defs, def_uses_pos })
    }

    /// Fills in definition slots; with `only_pos`, only those depending on
    /// `pos` are recomputed.
    pub(crate) fn run_defs(&self, machine: &mut Machine, only_pos: bool) {
        for (i, code) in self.defs.iter().enumerate() {
            if !only_pos || self.def_uses_pos[i] {
                let v = machine.run(code);
                machine.slots[2 + i] = v;
            }
        }
    }
}

pub(crate) fn access_value(m: &FiniteModel) -> Value {
    let bits = m.access_matrix().iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
    Value::Bits(bits, mask((m.worlds() * m.worlds()) as u32))
}

/// Runtime value of `pos` from a (possibly partial) positivity table given as
/// parallel value/known bit vectors over `ext * worlds + w`.
pub(crate) fn positivity_value(sizes: Sizes, value: &dyn Fn(usize) -> Option<bool>) -> Value {
    let w = sizes.worlds as usize;
    let exts = 1usize << (sizes.indivs * sizes.worlds);
    let row = |e: usize| {
        let (mut v, mut k) = (0u64, 0u64);
        for u in 0..w {
            if let Some(b) = value(e * w + u) {
                k |= 1 << u;
                v |= u64::from(b) << u;
            }
        }
        (v, k)
    };
    if exts * w <= 64 {
        let (mut v, mut k) = (0u64, 0u64);
        for e in 0..exts {
            let (rv, rk) = row(e);
            v |= rv << (e * w);
            k |= rk << (e * w);
        }
        Value::Bits(v, k)
    } else {
        Value::Table(
            (0..exts)
                .map(|e| {
                    let (v, k) = row(e);
                    Value::Bits(v, k)
                })
                .collect(),
        )
    }
}

/// A compiled, fully interpreted model ready to evaluate terms.
pub(crate) struct Interpretation {
    pub sizes: Sizes,
    pub layout: Layout,
    pub machine: Machine,
}

impl Interpretation {
    pub(crate) fn new(m: &FiniteModel, sig: &Signature) -> Result<Self, EvalError> {
        let sizes = Sizes::of(m);
        let layout = Layout::new(sig, sizes)?;
        let mut slots = vec![Value::Unknown; layout.scope.len()];
        slots[ACCESS_SLOT] = access_value(m);
        let table = m.positivity_table();
        slots[POSITIVE_SLOT] = positivity_value(sizes, &|i| Some(table[i]));
        let mut machine = Machine::new(slots);
        layout.run_defs(&mut machine, false);
        Ok(Interpretation { sizes, layout, machine })
    }

    pub(crate) fn holds(&mut self, sig: &Signature, t: &Term) -> Result<bool, EvalError> {
        stt::typecheck_with(t, &sig.type_lookup())?;
        let code = Compiler { sizes: self.sizes, scope: &self.layout.scope }.compile_formula(t)?;
        Ok(self.machine.run(&code).truth().expect("total interpretation"))
    }
}

/// Evaluates `t` in `m`, interpreting `r`, `pos` and the definitions of
/// `sig`; `env` assigns typed values to free variables and to any further
/// constants.
pub fn eval(m: &FiniteModel, sig: &Signature, t: &Term, env: &[(Name, Type, SemValue)]) -> Result<SemValue, EvalError> {
    let lookup = |n: &str| {
        env.iter().rev().find(|(v, _, _)| &**v == n).map(|(_, t, _)| t.clone()).or_else(|| sig.constant_type(n))
    };
    stt::typecheck_with(t, &lookup).map_err(|e| match e {
        TypeError::UnboundVariable(n) => EvalError::Unbound(n),
        e => e.into(),
    })?;
    let mut interp = Interpretation::new(m, sig)?;
    let sizes = interp.sizes;
    let mut scope = interp.layout.scope.clone();
    for (n, ty, v) in env {
        let value = encode(v, ty, sizes).ok_or_else(|| EvalError::Shape(n.clone(), ty.clone()))?;
        if sig.constant_type(n).is_some() {
            scope.add_const(n, ty.clone());
        } else {
            scope.add_free(n, ty.clone());
        }
        interp.machine.slots.push(value);
    }
    let (code, ty) = Compiler { sizes, scope: &scope }.compile(t)?;
    let v = interp.machine.run(&code);
    Ok(decode(&v, &ty, sizes).expect("total interpretation yields total values"))
}

/// Truth value of a closed formula in `m`.
pub fn holds(m: &FiniteModel, sig: &Signature, t: &Term) -> Result<bool, EvalError> {
    Interpretation::new(m, sig)?.holds(sig, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::{ModalFormula, PropTerm};

    fn model(worlds: usize, indivs: usize, access: &[u8], positive: &[usize]) -> FiniteModel {
        let exts = 1 << (worlds * indivs);
        let mut pos = vec![false; exts * worlds];
        for &i in positive {
            pos[i] = true;
        }
        FiniteModel::new(worlds, indivs, access.iter().map(|&b| b == 1).collect(), pos).unwrap()
    }

    #[test]
    fn validity_of_truth() {
        let m = model(2, 1, &[0, 1, 0, 0], &[]);
        let sig = Signature::new();
        assert!(holds(&m, &sig, &sig.valid(&ModalFormula::Truth).unwrap()).unwrap());
    }

    #[test]
    fn box_falsity_depends_on_access() {
        let sig = Signature::new();
        let f = sig.valid(&ModalFormula::boxed(ModalFormula::Falsity)).unwrap();
        assert!(holds(&model(2, 1, &[0, 0, 0, 0], &[]), &sig, &f).unwrap());
        assert!(!holds(&model(2, 1, &[1, 1, 1, 1], &[]), &sig, &f).unwrap());
    }

    #[test]
    fn positivity_layout_matches_table() {
        // pos(Phi) at world 1 for the extension with index 2
        let m = model(2, 1, &[0; 4], &[2 * 2 + 1]);
        let sig = Signature::new();
        let t = Term::apps(crate::modal::positive_const(), [Term::free("P"), Term::free("w")]);
        let env = |e: usize, w: usize| {
            let p = SemValue::Function(
                (0..1)
                    .map(|i| SemValue::Function((0..2).map(|u| SemValue::Bool(e >> (i * 2 + u) & 1 == 1)).collect()))
                    .collect(),
            );
            vec![("P".into(), Type::property(), p), ("w".into(), Type::World, SemValue::World(w))]
        };
        for e in 0..4 {
            for w in 0..2 {
                let v = eval(&m, &sig, &t, &env(e, w)).unwrap();
                assert_eq!(v, SemValue::Bool(e == 2 && w == 1), "ext {e} world {w}");
            }
        }
    }

    #[test]
    fn functions_decode_to_tables() {
        let m = model(1, 2, &[1], &[]);
        let sig = Signature::new();
        let p = sig.embed_prop(&PropTerm::lambda("x", ModalFormula::Truth)).unwrap();
        let v = eval(&m, &sig, &p, &[]).unwrap();
        let row = SemValue::Function(vec![SemValue::Bool(true)]);
        assert_eq!(v, SemValue::Function(vec![row.clone(), row]));
    }

    #[test]
    fn env_shape_is_checked() {
        let m = model(1, 1, &[1], &[]);
        let sig = Signature::new();
        let err = eval(&m, &sig, &Term::free("x"), &[("x".into(), Type::Indiv, SemValue::Indiv(3))]);
        assert_eq!(err, Err(EvalError::Shape("x".into(), Type::Indiv)));
        assert_eq!(eval(&m, &sig, &Term::free("y"), &[]), Err(EvalError::Unbound("y".into())));
    }

    #[test]
    fn partial_positivity_gives_unknown() {
        let sizes = Sizes { worlds: 1, indivs: 1 };
        let sig = Signature::new();
        let layout = Layout::new(&sig, sizes).unwrap();
        let pos = positivity_value(sizes, &|i| (i == 0).then_some(false));
        let mut machine = Machine::new(vec![Value::Bits(0, 1), pos]);
        let f = sig.valid(&ModalFormula::exists_prop("Phi", ModalFormula::positive(PropTerm::var("Phi")))).unwrap();
        let code = Compiler { sizes, scope: &layout.scope }.compile_formula(&f).unwrap();
        assert_eq!(machine.run(&code).truth(), None);
        let g = sig.valid(&ModalFormula::forall_prop("Phi", ModalFormula::positive(PropTerm::var("Phi")))).unwrap();
        let code = Compiler { sizes, scope: &layout.scope }.compile_formula(&g).unwrap();
        assert_eq!(machine.run(&code).truth(), Some(false));
    }
}
