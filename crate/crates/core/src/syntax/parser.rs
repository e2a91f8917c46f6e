use std::collections::BTreeSet;

use thiserror::Error;

use super::lexer::{lex, Pos, Tok, Token};
use super::theory::{is_keyword, DefItem, Expected, ExperimentKind, ExperimentSpec, Item, TheoryError, TheoryFile};
use crate::modal::{DefArg, DefBody, FrameClass, IndivTerm, ModalFormula, PropTerm, Signature, Sort};
use crate::nd::{Block, Justification, Label, Line, Proof, Range, Step};
use crate::stt::{self, Logic, Name, Term, Type};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{pos}: unexpected character `{found}`")]
    Char { pos: Pos, found: char },
    #[error("{pos}: expected {}, found {found}", list(.expected))]
    Unexpected { pos: Pos, expected: Vec<String>, found: String },
    #[error("{pos}: {error}")]
    Invalid { pos: Pos, error: TheoryError },
    #[error("{pos}: {message}")]
    Scope { pos: Pos, message: String },
}

fn list(items: &[String]) -> String {
    match items {
        [] => "something else".into(),
        [one] => one.clone(),
        _ => format!("one of {}", items.join(", ")),
    }
}

impl SyntaxError {
    pub fn pos(&self) -> Pos {
        match self {
            SyntaxError::Char { pos, .. }
            | SyntaxError::Unexpected { pos, .. }
            | SyntaxError::Invalid { pos, .. }
            | SyntaxError::Scope { pos, .. } => *pos,
        }
    }
}

type PResult<T> = Result<T, SyntaxError>;

/// Parses a theory file.
pub fn parse_theory(src: &str) -> PResult<TheoryFile> {
    let mut p = Parser::new(src, TheoryFile::new())?;
    while !p.at_eof() {
        let pos = p.pos();
        let item = p.item()?;
        p.theory.push(item).map_err(|error| SyntaxError::Invalid { pos, error })?;
    }
    Ok(p.theory)
}

/// Parses a modal formula against the definitions of `sig`. Free variables
/// are allowed.
pub fn parse_formula(src: &str, sig: &Signature) -> PResult<ModalFormula> {
    let mut p = Parser::new(src, TheoryFile::new())?;
    p.sig_override = Some(sig.clone());
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parses a HOL term; `vars` are the free variables in scope.
pub fn parse_term(src: &str, sig: &Signature, vars: &[(Name, Type)]) -> PResult<Term> {
    let mut p = Parser::new(src, TheoryFile::new())?;
    p.sig_override = Some(sig.clone());
    p.eigens = vars.to_vec();
    let t = p.hol()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> PResult<Type> {
    let mut p = Parser::new(src, TheoryFile::new())?;
    let t = p.ty()?;
    p.expect_eof()?;
    Ok(t)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    expected: BTreeSet<String>,
    theory: TheoryFile,
    sig_override: Option<Signature>,
    /// Fixed variables of the enclosing subproofs.
    eigens: Vec<(Name, Type)>,
    /// HOL binders, innermost last.
    bound: Vec<Name>,
}

impl Parser {
    fn new(src: &str, theory: TheoryFile) -> PResult<Self> {
        let toks = lex(src).map_err(|e| SyntaxError::Char { pos: e.pos, found: e.found })?;
        Ok(Parser {
            toks,
            i: 0,
            expected: BTreeSet::new(),
            theory,
            sig_override: None,
            eigens: Vec::new(),
            bound: Vec::new(),
        })
    }

    fn sig(&self) -> &Signature {
        self.sig_override.as_ref().unwrap_or_else(|| self.theory.signature())
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        self.expected.clear();
        t
    }

    fn error<T>(&mut self) -> PResult<T> {
        Err(SyntaxError::Unexpected {
            pos: self.pos(),
            expected: std::mem::take(&mut self.expected).into_iter().collect(),
            found: self.peek().to_string(),
        })
    }

    fn scope_error<T>(&self, pos: Pos, message: impl Into<String>) -> PResult<T> {
        Err(SyntaxError::Scope { pos, message: message.into() })
    }

    fn is_sym(&mut self, s: &'static str) -> bool {
        if *self.peek() == Tok::Sym(s) {
            true
        } else {
            self.expected.insert(format!("`{s}`"));
            false
        }
    }

    fn eat_sym(&mut self, s: &'static str) -> bool {
        let yes = self.is_sym(s);
        if yes {
            self.bump();
        }
        yes
    }

    fn sym(&mut self, s: &'static str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error()
        }
    }

    fn is_kw(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == kw) {
            true
        } else {
            self.expected.insert(format!("`{kw}`"));
            false
        }
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        let yes = self.is_kw(kw);
        if yes {
            self.bump();
        }
        yes
    }

    fn kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.error()
        }
    }

    fn is_dollar(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Dollar(d) if d == s) {
            true
        } else {
            self.expected.insert(format!("`${s}`"));
            false
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            self.expected.insert("end of input".into());
            self.error()
        }
    }

    /// A non-keyword identifier.
    fn name(&mut self) -> PResult<Name> {
        match self.peek() {
            Tok::Ident(s) if !is_keyword(s) => {
                let n: Name = s.as_str().into();
                self.bump();
                Ok(n)
            }
            _ => {
                self.expected.insert("a name".into());
                self.error()
            }
        }
    }

    fn number(&mut self) -> PResult<u64> {
        match *self.peek() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => {
                self.expected.insert("a number".into());
                self.error()
            }
        }
    }

    fn label(&mut self) -> PResult<Label> {
        let pos = self.pos();
        let n = self.number()?;
        Label::try_from(n).or_else(|_| self.scope_error(pos, "line number too large"))
    }

    fn names(&mut self) -> PResult<Vec<Name>> {
        let mut out = vec![self.name()?];
        while self.eat_sym(",") {
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn frame(&mut self) -> PResult<FrameClass> {
        for fc in FrameClass::ALL {
            if self.eat_kw(&fc.to_string()) {
                return Ok(fc);
            }
        }
        self.error()
    }

    // ---- items ----

    fn item(&mut self) -> PResult<Item> {
        if self.eat_kw("theory") {
            return Ok(Item::Theory(self.name()?));
        }
        if self.eat_kw("logic") {
            return Ok(Item::Logic(self.frame()?));
        }
        if self.eat_kw("const") {
            let n = self.name()?;
            self.sym(":")?;
            return Ok(Item::Const(n, self.ty()?));
        }
        if self.eat_kw("def") {
            return self.definition();
        }
        if self.eat_kw("axiom") {
            let n = self.name()?;
            self.sym(":")?;
            return Ok(Item::Axiom(n, self.closed_formula()?));
        }
        if self.eat_kw("conjecture") {
            let n = self.name()?;
            self.sym(":")?;
            return Ok(Item::Conjecture(n, self.closed_formula()?));
        }
        if self.eat_kw("proof") {
            return self.proof();
        }
        if self.eat_kw("experiment") {
            return self.experiment();
        }
        self.error()
    }

    fn closed_formula(&mut self) -> PResult<ModalFormula> {
        let pos = self.pos();
        let f = self.formula()?;
        self.sig().check_formula(&f, &|_| None).map_err(|e| SyntaxError::Invalid { pos, error: e.into() })?;
        Ok(f)
    }

    fn definition(&mut self) -> PResult<Item> {
        let name = self.name()?;
        if self.eat_sym("(") {
            let params = self.names()?;
            self.sym(")")?;
            self.sym(":=")?;
            let body = self.formula()?;
            return Ok(Item::Def(DefItem { name, params, body: DefBody::Relation(body) }));
        }
        self.sym(":=")?;
        let p = self.prop()?;
        Ok(Item::Def(DefItem { name, params: Vec::new(), body: DefBody::Property(p) }))
    }

    fn proof(&mut self) -> PResult<Item> {
        let name = self.name()?;
        let frame = if self.eat_kw("logic") { self.frame()? } else { self.theory.frame() };
        let premises = if self.eat_kw("from") { self.names()? } else { Vec::new() };
        self.sym("{")?;
        let steps = self.steps()?;
        self.sym("}")?;
        Ok(Item::Proof(Proof { name, frame, premises, steps, conclusion: Term::truth() }))
    }

    fn experiment(&mut self) -> PResult<Item> {
        let name = self.name()?;
        self.sym(":")?;
        let kind = if self.eat_kw("check_proof") {
            ExperimentKind::CheckProof(self.names()?)
        } else if self.eat_kw("find_model") {
            let from = if self.eat_kw("from") { Some(self.names()?) } else { None };
            ExperimentKind::FindModel { from }
        } else if self.eat_kw("find_countermodel") {
            let conjecture = self.name()?;
            let from = if self.eat_kw("from") { Some(self.names()?) } else { None };
            ExperimentKind::FindCountermodel { conjecture, from }
        } else {
            return self.error();
        };
        let mut spec = ExperimentSpec {
            name,
            kind,
            frame: None,
            worlds: None,
            indivs: None,
            nodes: None,
            secs: None,
            expect: Expected::Ok,
        };
        loop {
            if self.eat_kw("logic") {
                spec.frame = Some(self.frame()?);
            } else if self.eat_kw("worlds") {
                spec.worlds = Some(self.number()? as usize);
            } else if self.eat_kw("indivs") {
                spec.indivs = Some(self.number()? as usize);
            } else if self.eat_kw("nodes") {
                spec.nodes = Some(self.number()?);
            } else if self.eat_kw("secs") {
                spec.secs = Some(self.number()?);
            } else if self.eat_kw("expect") {
                for e in Expected::ALL {
                    if self.eat_kw(e.keyword()) {
                        spec.expect = e;
                        return Ok(Item::Experiment(spec));
                    }
                }
                return self.error();
            } else {
                return self.error();
            }
        }
    }

    // ---- types ----

    fn ty(&mut self) -> PResult<Type> {
        let dom = self.ty_atom()?;
        if self.eat_sym(">") {
            Ok(Type::arrow(dom, self.ty()?))
        } else {
            Ok(dom)
        }
    }

    fn ty_atom(&mut self) -> PResult<Type> {
        for (d, t) in [("i", Type::Indiv), ("w", Type::World), ("o", Type::Bool)] {
            if self.is_dollar(d) {
                self.bump();
                return Ok(t);
            }
        }
        if self.eat_sym("(") {
            let t = self.ty()?;
            self.sym(")")?;
            return Ok(t);
        }
        self.error()
    }

    // ---- modal formulas ----

    fn formula(&mut self) -> PResult<ModalFormula> {
        let a = self.imp()?;
        if self.eat_sym("<->") {
            let b = self.imp()?;
            return Ok(ModalFormula::iff(a, b));
        }
        Ok(a)
    }

    fn imp(&mut self) -> PResult<ModalFormula> {
        let a = self.or()?;
        if self.eat_sym("->") {
            return Ok(ModalFormula::implies(a, self.imp()?));
        }
        Ok(a)
    }

    fn or(&mut self) -> PResult<ModalFormula> {
        let mut a = self.and()?;
        while self.eat_sym("|") {
            a = ModalFormula::or(a, self.and()?);
        }
        Ok(a)
    }

    fn and(&mut self) -> PResult<ModalFormula> {
        let mut a = self.unary()?;
        while self.eat_sym("&") {
            a = ModalFormula::and(a, self.unary()?);
        }
        Ok(a)
    }

    fn quant_vars(&mut self) -> PResult<Vec<Name>> {
        self.sym("[")?;
        let vs = self.names()?;
        self.sym("]")?;
        self.sym(":")?;
        Ok(vs)
    }

    fn unary(&mut self) -> PResult<ModalFormula> {
        if self.eat_sym("~") {
            return Ok(ModalFormula::not(self.unary()?));
        }
        if self.eat_kw("box") {
            return Ok(ModalFormula::boxed(self.unary()?));
        }
        if self.eat_kw("dia") {
            return Ok(ModalFormula::dia(self.unary()?));
        }
        for universal in [true, false] {
            if self.eat_sym(if universal { "!" } else { "?" }) {
                let vs = self.quant_vars()?;
                let body = self.unary()?;
                return Ok(vs.iter().rev().fold(body, |acc, v| {
                    let b = Box::new(acc);
                    match (universal, Sort::of_variable(v)) {
                        (true, Sort::Indiv) => ModalFormula::ForallIndiv(v.clone(), b),
                        (true, Sort::Prop) => ModalFormula::ForallProp(v.clone(), b),
                        (false, Sort::Indiv) => ModalFormula::ExistsIndiv(v.clone(), b),
                        (false, Sort::Prop) => ModalFormula::ExistsProp(v.clone(), b),
                    }
                }));
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<ModalFormula> {
        if self.is_dollar("true") {
            self.bump();
            return Ok(ModalFormula::Truth);
        }
        if self.is_dollar("false") {
            self.bump();
            return Ok(ModalFormula::Falsity);
        }
        if self.eat_sym("(") {
            if self.is_sym("\\") {
                let p = self.prop()?;
                self.sym(")")?;
                return self.applied(p);
            }
            let f = self.formula()?;
            self.sym(")")?;
            return Ok(f);
        }
        if self.eat_kw("pos") {
            self.sym("(")?;
            let p = self.prop()?;
            self.sym(")")?;
            return Ok(ModalFormula::Positive(p));
        }
        if self.is_kw("non") {
            let p = self.prop()?;
            return self.applied(p);
        }
        let pos = self.pos();
        let name = self.name()?;
        if let Some(d) = self.sig().definition(&name) {
            if !d.is_property() {
                self.sym("(")?;
                let mut args = vec![self.def_arg()?];
                while self.eat_sym(",") {
                    args.push(self.def_arg()?);
                }
                self.sym(")")?;
                return Ok(ModalFormula::DefApp(name, args));
            }
            return self.applied(PropTerm::Defined(name));
        }
        if Sort::of_variable(&name) == Sort::Indiv {
            return self.scope_error(pos, format!("`{name}` is not a property"));
        }
        self.applied(PropTerm::Var(name))
    }

    /// `T(x)` for a property term `T` already read.
    fn applied(&mut self, p: PropTerm) -> PResult<ModalFormula> {
        self.sym("(")?;
        let x = self.indiv()?;
        self.sym(")")?;
        Ok(ModalFormula::AtomApp(p, x))
    }

    fn indiv(&mut self) -> PResult<IndivTerm> {
        let pos = self.pos();
        let n = self.name()?;
        if self.sig().constant_type(&n) == Some(Type::Indiv) {
            return Ok(IndivTerm::Const(n));
        }
        if Sort::of_variable(&n) != Sort::Indiv || self.sig().is_reserved(&n) {
            return self.scope_error(pos, format!("`{n}` is not an individual"));
        }
        Ok(IndivTerm::Var(n))
    }

    fn prop(&mut self) -> PResult<PropTerm> {
        if self.eat_sym("\\") {
            self.sym("[")?;
            let x = self.name()?;
            self.sym("]")?;
            self.sym(":")?;
            return Ok(PropTerm::Lambda(x, Box::new(self.formula()?)));
        }
        if self.eat_kw("non") {
            self.sym("(")?;
            let p = self.prop()?;
            self.sym(")")?;
            return Ok(PropTerm::neg(p));
        }
        let pos = self.pos();
        let n = self.name()?;
        match self.sig().definition(&n) {
            Some(d) if d.is_property() => Ok(PropTerm::Defined(n)),
            Some(_) => self.scope_error(pos, format!("`{n}` is a relation, not a property")),
            None if Sort::of_variable(&n) == Sort::Prop => Ok(PropTerm::Var(n)),
            None => self.scope_error(pos, format!("`{n}` is not a property")),
        }
    }

    fn def_arg(&mut self) -> PResult<DefArg> {
        if self.is_sym("\\") || self.is_kw("non") {
            return Ok(DefArg::Prop(self.prop()?));
        }
        if let Tok::Ident(s) = self.peek() {
            let s = s.clone();
            let is_prop = self.sig().definition(&s).is_some()
                || (Sort::of_variable(&s) == Sort::Prop && self.sig().constant_type(&s).is_none());
            if is_prop {
                return Ok(DefArg::Prop(self.prop()?));
            }
        }
        Ok(DefArg::Indiv(self.indiv()?))
    }

    // ---- proof steps ----

    fn steps(&mut self) -> PResult<Vec<Step>> {
        let mut out = Vec::new();
        loop {
            if self.eat_sym("{") {
                out.push(Step::Block(self.block()?));
            } else if matches!(self.peek(), Tok::Num(_)) {
                out.push(Step::Line(self.line()?));
            } else {
                self.expected.insert("a numbered step".into());
                self.expected.insert("`{`".into());
                return Ok(out);
            }
        }
    }

    fn block(&mut self) -> PResult<Block> {
        let mut fixes = Vec::new();
        if self.eat_kw("fix") {
            loop {
                let n = self.name()?;
                self.sym(":")?;
                fixes.push((n, self.ty()?));
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        let depth = self.eigens.len();
        self.eigens.extend(fixes.iter().cloned());
        let steps = self.steps();
        self.eigens.truncate(depth);
        let steps = steps?;
        self.sym("}")?;
        Ok(Block { fixes, steps })
    }

    fn line(&mut self) -> PResult<Line> {
        let label = self.label()?;
        self.sym(".")?;
        let formula = self.hol()?;
        self.kw("by")?;
        let just = self.justification()?;
        Ok(Line { label, formula, just })
    }

    fn range(&mut self) -> PResult<Range> {
        let first = self.label()?;
        self.sym("-")?;
        Ok(Range::new(first, self.label()?))
    }

    fn witnesses(&mut self) -> PResult<Vec<Term>> {
        self.sym("[")?;
        let mut out = Vec::new();
        if !self.eat_sym("]") {
            loop {
                out.push(self.hol()?);
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.sym("]")?;
        }
        Ok(out)
    }

    fn justification(&mut self) -> PResult<Justification> {
        use Justification::*;
        let rule = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => {
                self.expected.insert("a rule name".into());
                return self.error();
            }
        };
        let pos = self.pos();
        self.bump();
        let two = |p: &mut Self| -> PResult<(Label, Label)> {
            let a = p.label()?;
            p.sym(",")?;
            Ok((a, p.label()?))
        };
        Ok(match rule.as_str() {
            "hyp" => Hypothesis,
            "ax" => AxiomRef(self.name()?),
            "def" => {
                let n = self.name()?;
                DefUnfold(n, self.label()?)
            }
            "imp_intro" => ImpIntro(self.range()?),
            "imp_elim" => {
                let (a, b) = two(self)?;
                ImpElim(a, b)
            }
            "and_intro" => {
                let (a, b) = two(self)?;
                AndIntro(a, b)
            }
            "and_elim1" => AndElimL(self.label()?),
            "and_elim2" => AndElimR(self.label()?),
            "or_intro1" => OrIntroL(self.label()?),
            "or_intro2" => OrIntroR(self.label()?),
            "or_elim" => {
                let a = self.label()?;
                self.sym(",")?;
                let r1 = self.range()?;
                self.sym(",")?;
                OrElim(a, r1, self.range()?)
            }
            "not_intro" => NotIntro(self.range()?),
            "not_elim" => {
                let (a, b) = two(self)?;
                NotElim(a, b)
            }
            "false_elim" => FalsityElim(self.label()?),
            "iff_intro" => {
                let (a, b) = two(self)?;
                IffIntro(a, b)
            }
            "iff_elim1" => IffElimL(self.label()?),
            "iff_elim2" => IffElimR(self.label()?),
            "forall_intro" => ForallIntro(self.range()?),
            "forall_elim" => {
                let a = self.label()?;
                ForallElim(a, self.witnesses()?)
            }
            "exists_intro" => {
                let a = self.label()?;
                ExistsIntro(a, self.witnesses()?)
            }
            "exists_elim" => {
                let a = self.label()?;
                self.sym(",")?;
                ExistsElim(a, self.range()?)
            }
            "dne" => DoubleNegElim(self.label()?),
            "beta" => BetaConv(self.label()?),
            other => return self.scope_error(pos, format!("unknown rule `{other}`")),
        })
    }

    // ---- HOL terms ----

    fn hol(&mut self) -> PResult<Term> {
        let a = self.hol_imp()?;
        if self.eat_sym("<->") {
            let b = self.hol_imp()?;
            return Ok(Term::iff(a, b));
        }
        Ok(a)
    }

    fn hol_imp(&mut self) -> PResult<Term> {
        let a = self.hol_or()?;
        if self.eat_sym("->") {
            return Ok(Term::imp(a, self.hol_imp()?));
        }
        Ok(a)
    }

    fn hol_or(&mut self) -> PResult<Term> {
        let mut a = self.hol_and()?;
        while self.eat_sym("|") {
            a = Term::or(a, self.hol_and()?);
        }
        Ok(a)
    }

    fn hol_and(&mut self) -> PResult<Term> {
        let mut a = self.hol_unary()?;
        while self.eat_sym("&") {
            a = Term::and(a, self.hol_unary()?);
        }
        Ok(a)
    }

    fn hol_unary(&mut self) -> PResult<Term> {
        if self.eat_sym("~") {
            return Ok(Term::not(self.hol_unary()?));
        }
        for (sym, kind) in [("!", 0), ("?", 1), ("^", 2)] {
            if self.eat_sym(sym) {
                self.sym("[")?;
                let mut vars = Vec::new();
                loop {
                    let n = self.name()?;
                    self.sym(":")?;
                    vars.push((n, self.ty()?));
                    if !self.eat_sym(",") {
                        break;
                    }
                }
                self.sym("]")?;
                self.sym(":")?;
                let depth = self.bound.len();
                self.bound.extend(vars.iter().map(|(n, _)| n.clone()));
                let body = self.hol_unary();
                self.bound.truncate(depth);
                let body = body?;
                // The body refers to binders by name through `Free`
                // placeholders; abstract innermost first.
                return Ok(vars.iter().rev().fold(body, |acc, (n, ty)| {
                    let lam = Term::Lam(n.clone(), ty.clone(), stt::abstract_free(&acc, n, 0).into());
                    match kind {
                        0 => Term::app(Term::Logic(Logic::Forall(ty.clone())), lam),
                        1 => Term::app(Term::Logic(Logic::Exists(ty.clone())), lam),
                        _ => lam,
                    }
                }));
            }
        }
        self.hol_app()
    }

    fn hol_app(&mut self) -> PResult<Term> {
        let mut t = self.hol_atom()?;
        while self.eat_sym("(") {
            loop {
                t = Term::app(t, self.hol()?);
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.sym(")")?;
        }
        Ok(t)
    }

    fn hol_atom(&mut self) -> PResult<Term> {
        if self.eat_sym("(") {
            let t = self.hol()?;
            self.sym(")")?;
            return Ok(t);
        }
        if self.is_sym("{") {
            let pos = self.pos();
            self.bump();
            let f = self.formula()?;
            self.sym("}")?;
            return self.embed_inline(pos, &f);
        }
        if let Tok::Dollar(d) = self.peek() {
            let d = d.clone();
            let logic = match d.as_str() {
                "true" => Some(Logic::True),
                "false" => Some(Logic::False),
                "not" => Some(Logic::Not),
                "and" => Some(Logic::And),
                "or" => Some(Logic::Or),
                "imp" => Some(Logic::Imp),
                "iff" => Some(Logic::Iff),
                _ => None,
            };
            if let Some(l) = logic {
                self.bump();
                return Ok(Term::Logic(l));
            }
            if d == "forall" || d == "exists" {
                self.bump();
                self.sym("[")?;
                let ty = self.ty()?;
                self.sym("]")?;
                return Ok(Term::Logic(if d == "forall" { Logic::Forall(ty) } else { Logic::Exists(ty) }));
            }
            self.expected.insert("a term".into());
            return self.error();
        }
        let pos = self.pos();
        let n = match self.peek() {
            Tok::Ident(s) if !is_keyword(s) || s == "pos" => s.as_str().into(),
            _ => {
                self.expected.insert("a term".into());
                return self.error();
            }
        };
        self.bump();
        self.resolve(pos, n)
    }

    /// Binders and fixed variables become `Free` (binders are abstracted
    /// by the enclosing binder); anything else must be a constant.
    fn resolve(&self, pos: Pos, n: Name) -> PResult<Term> {
        if self.bound.contains(&n) || self.eigens.iter().any(|(m, _)| *m == n) {
            return Ok(Term::Free(n));
        }
        match self.sig().constant_type(&n) {
            Some(ty) => Ok(Term::Const(n, ty)),
            None => self.scope_error(pos, format!("unknown name `{n}`")),
        }
    }

    /// `{F}` denotes the embedding of `F`, a term of type `$w > $o`. Its free
    /// variables refer to enclosing binders or fixed variables.
    fn embed_inline(&self, pos: Pos, f: &ModalFormula) -> PResult<Term> {
        let t = self.sig().embed(f).map_err(|e| SyntaxError::Invalid { pos, error: e.into() })?;
        for v in stt::free_vars(&t) {
            if !(self.bound.contains(&v) || self.eigens.iter().any(|(m, _)| *m == v)) {
                return self.scope_error(pos, format!("unknown name `{v}`"));
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn god_theory() -> &'static str {
        "def G := \\[x]: ![Phi]: (pos(Phi) -> Phi(x))\n"
    }

    #[test]
    fn positivity_of_a_definition() {
        let t = parse_theory(&format!("{}axiom a3 : pos(G)", god_theory())).unwrap();
        assert_eq!(t.axioms()[0].1, &ModalFormula::Positive(PropTerm::defined("G")));
    }

    #[test]
    fn necessary_existence_shape() {
        let t = parse_theory(&format!("{}conjecture t3 : box ?[x]: G(x)", god_theory())).unwrap();
        let want =
            ModalFormula::boxed(ModalFormula::exists_indiv("x", ModalFormula::atom(PropTerm::defined("G"), "x")));
        assert_eq!(t.conjectures()[0].1, &want);
    }

    #[test]
    fn positivity_of_an_individual_is_rejected() {
        let err = parse_theory("axiom bad : ![x]: pos(x)").unwrap_err();
        assert_eq!(err.pos(), Pos { line: 1, col: 23 });
    }

    #[test]
    fn precedence() {
        let sig = Signature::new();
        let f = parse_formula("~P(x) & Q(x) | R(x) -> S(x) -> P(x) <-> Q(x)", &sig).unwrap();
        let (p, q, r, s) = (
            || ModalFormula::atom(PropTerm::var("P"), "x"),
            || ModalFormula::atom(PropTerm::var("Q"), "x"),
            || ModalFormula::atom(PropTerm::var("R"), "x"),
            || ModalFormula::atom(PropTerm::var("S"), "x"),
        );
        let lhs = ModalFormula::implies(
            ModalFormula::or(ModalFormula::and(ModalFormula::not(p()), q()), r()),
            ModalFormula::implies(s(), p()),
        );
        assert_eq!(f, ModalFormula::iff(lhs, q()));
        assert!(parse_formula("P(x) <-> P(x) <-> P(x)", &sig).is_err());
    }

    #[test]
    fn expected_tokens_are_listed() {
        let err = parse_theory("axiom a : box").unwrap_err();
        match err {
            SyntaxError::Unexpected { pos, expected, .. } => {
                assert_eq!(pos, Pos { line: 1, col: 14 });
                assert!(expected.contains(&"`~`".to_string()));
                assert!(expected.contains(&"`pos`".to_string()));
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn hol_terms_resolve_names() {
        let sig = Signature::new();
        let t = parse_term("![w:$w]: r(w, v)", &sig, &[("v".into(), Type::World)]).unwrap();
        let want = Term::forall(
            "w",
            Type::World,
            Term::apps(crate::modal::access_const(), [Term::free("w"), Term::free("v")]),
        );
        assert_eq!(t, want);
        assert!(parse_term("q(w)", &sig, &[]).is_err());
    }

    #[test]
    fn inline_modal_formula() {
        let t = parse_theory(god_theory()).unwrap();
        let sig = t.signature();
        let a = parse_term("![x:$i]: {G(x)}(w)", sig, &[("w".into(), Type::World)]).unwrap();
        let b = parse_term("![x:$i]: G(x, w)", sig, &[("w".into(), Type::World)]).unwrap();
        assert!(stt::alpha_beta_eq(&a, &b));
    }

    #[test]
    fn types() {
        assert_eq!(parse_type("$i>$w>$o").unwrap(), Type::property());
        assert_eq!(parse_type("($i>$w>$o)>$w>$o").unwrap(), Type::positivity());
    }
}
