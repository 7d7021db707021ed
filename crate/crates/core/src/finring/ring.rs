use std::fmt;
use std::sync::Arc;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::fpoly::FpPoly;

/// Largest ring that can be materialized.
pub const DEFAULT_CAP: usize = 4096;
/// Largest ring accepted from a table file.
pub const TABLE_FILE_CAP: usize = 16;
/// Rings up to this order get their axioms verified exhaustively on parse.
pub const AXIOM_CHECK_MAX: usize = 256;
/// Rings up to this order keep full operation tables.
const TABLE_CACHE_MAX: usize = 1024;

/// Element of a [`FiniteRing`], identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// How a ring was built. Printing an expression yields text that
/// [`FiniteRing::parse`] maps back to the same ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingExpr {
    Residue(u32),
    PolyQuotient { p: u32, modulus: FpPoly },
    Product(Box<RingExpr>, Box<RingExpr>),
    TableFile(String),
    /// Built internally (quotients, corner rings); not parseable.
    Derived(String),
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Residue(n) => write!(f, "Z/{n}"),
            RingExpr::PolyQuotient { p, modulus } => write!(f, "F{p}[x]/({})", modulus.fmt_var("x")),
            RingExpr::Product(a, b) => write!(f, "{a} x {b}"),
            RingExpr::TableFile(name) => write!(f, "table:{name}"),
            RingExpr::Derived(label) => write!(f, "{label}"),
        }
    }
}

#[derive(Debug)]
enum Arith {
    Residue(u32),
    Poly { p: u32, modulus: FpPoly },
    Product(Arc<FiniteRing>, Arc<FiniteRing>),
    Table { add: Vec<u32>, mul: Vec<u32>, labels: Option<Vec<String>> },
}

/// A finite commutative ring with identity, fully indexable.
///
/// Element indices follow the construction tree: residues in numeric
/// order, polynomial classes by `Σ c_i p^i`, and products lexicographically
/// with the left factor most significant.
#[derive(Debug)]
pub struct FiniteRing {
    expr: RingExpr,
    order: usize,
    zero: Elem,
    one: Elem,
    arith: Arith,
    cache: Option<(Vec<u32>, Vec<u32>)>,
    neg: Vec<u32>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.expr == other.expr
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    pub fn parse(spec: &str) -> Result<Arc<FiniteRing>> {
        FiniteRing::parse_with_cap(spec, DEFAULT_CAP)
    }

    /// Parse a ring expression:
    /// `ring := atom | ring " x " ring`,
    /// `atom := "Z/" nat | "F" prime "[x]/(" poly ")" | "table:" filename`.
    pub fn parse_with_cap(spec: &str, cap: usize) -> Result<Arc<FiniteRing>> {
        let mut pieces = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let bytes = spec.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'(' | b'[' => depth += 1,
                b')' | b']' => depth -= 1,
                b' ' if depth == 0 && spec[i..].starts_with(" x ") => {
                    pieces.push((start, &spec[start..i]));
                    start = i + 3;
                    i += 3;
                    continue;
                }
                _ => {}
            }
            i += 1;
        }
        pieces.push((start, &spec[start..]));
        let mut ring: Option<Arc<FiniteRing>> = None;
        for (pos, piece) in pieces {
            let atom = parse_atom(piece.trim(), pos, cap)?;
            ring = Some(match ring {
                None => atom,
                Some(left) => FiniteRing::product(&left, &atom, cap)?,
            });
        }
        let ring = ring.ok_or_else(|| Error::parse(0, "empty ring expression"))?;
        if ring.order <= AXIOM_CHECK_MAX {
            ring.verify_axioms()?;
        }
        Ok(ring)
    }

    pub fn residue(n: u32) -> Result<Arc<FiniteRing>> {
        FiniteRing::residue_with_cap(n, DEFAULT_CAP)
    }

    fn residue_with_cap(n: u32, cap: usize) -> Result<Arc<FiniteRing>> {
        if n < 2 {
            return Err(Error::AxiomViolation(format!("Z/{n} has 1 = 0")));
        }
        check_cap(n as usize, cap)?;
        Ok(FiniteRing::build(RingExpr::Residue(n), n as usize, Elem(0), Elem(1), Arith::Residue(n)))
    }

    /// `F_p[x]/(f)`; `f` is normalized to be monic.
    pub fn poly_quotient(p: u32, f: &FpPoly) -> Result<Arc<FiniteRing>> {
        FiniteRing::poly_quotient_with_cap(p, f, DEFAULT_CAP)
    }

    fn poly_quotient_with_cap(p: u32, f: &FpPoly, cap: usize) -> Result<Arc<FiniteRing>> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let modulus = f.monic();
        let deg = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::AxiomViolation("constant modulus gives the zero ring".into())),
        };
        let order = (p as usize)
            .checked_pow(deg as u32)
            .filter(|&o| o <= cap)
            .ok_or(Error::CapExceeded { order: usize::MAX, cap })?;
        Ok(FiniteRing::build(
            RingExpr::PolyQuotient { p, modulus: modulus.clone() },
            order,
            Elem(0),
            Elem(1),
            Arith::Poly { p, modulus },
        ))
    }

    pub fn product(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>, cap: usize) -> Result<Arc<FiniteRing>> {
        let order = a.order * b.order;
        check_cap(order, cap)?;
        let one = Elem((a.one.idx() * b.order + b.one.idx()) as u32);
        let zero = Elem((a.zero.idx() * b.order + b.zero.idx()) as u32);
        Ok(FiniteRing::build(
            RingExpr::Product(Box::new(a.expr.clone()), Box::new(b.expr.clone())),
            order,
            zero,
            one,
            Arith::Product(a.clone(), b.clone()),
        ))
    }

    /// Table-file ring: first the order `n`, then the `n×n` addition and
    /// multiplication matrices, row-major. Element 0 is zero, 1 is one.
    pub fn from_table_text(name: &str, text: &str) -> Result<Arc<FiniteRing>> {
        let mut tokens = Vec::new();
        let mut pos = 0;
        for tok in text.split_whitespace() {
            let at = text[pos..].find(tok).map(|i| i + pos).unwrap_or(pos);
            pos = at + tok.len();
            let value = tok
                .parse::<u32>()
                .map_err(|_| Error::parse(at, format!("expected a natural number, got {tok:?}")))?;
            tokens.push((at, value));
        }
        let (_, n) = *tokens.first().ok_or_else(|| Error::parse(0, "empty table file"))?;
        let n = n as usize;
        if n < 2 {
            return Err(Error::AxiomViolation("table ring needs at least two elements".into()));
        }
        check_cap(n, TABLE_FILE_CAP)?;
        if tokens.len() != 1 + 2 * n * n {
            return Err(Error::parse(
                text.len(),
                format!("expected {} entries, found {}", 2 * n * n, tokens.len() - 1),
            ));
        }
        for &(at, v) in &tokens[1..] {
            if v as usize >= n {
                return Err(Error::parse(at, format!("entry {v} out of range 0..{n}")));
            }
        }
        let add: Vec<u32> = tokens[1..1 + n * n].iter().map(|t| t.1).collect();
        let mul: Vec<u32> = tokens[1 + n * n..].iter().map(|t| t.1).collect();
        let ring = FiniteRing::build(
            RingExpr::TableFile(name.to_string()),
            n,
            Elem(0),
            Elem(1),
            Arith::Table { add, mul, labels: None },
        );
        ring.verify_axioms()?;
        Ok(ring)
    }

    /// Internal table ring whose elements carry display labels.
    pub(crate) fn derived(
        label: String,
        order: usize,
        zero: Elem,
        one: Elem,
        add: Vec<u32>,
        mul: Vec<u32>,
        labels: Vec<String>,
    ) -> Arc<FiniteRing> {
        FiniteRing::build(
            RingExpr::Derived(label),
            order,
            zero,
            one,
            Arith::Table { add, mul, labels: Some(labels) },
        )
    }

    fn build(expr: RingExpr, order: usize, zero: Elem, one: Elem, arith: Arith) -> Arc<FiniteRing> {
        let mut ring =
            FiniteRing { expr, order, zero, one, arith, cache: None, neg: Vec::new() };
        if order <= TABLE_CACHE_MAX {
            let mut add = vec![0u32; order * order];
            let mut mul = vec![0u32; order * order];
            for a in 0..order {
                for b in a..order {
                    let s = ring.add_raw(a, b) as u32;
                    let m = ring.mul_raw(a, b) as u32;
                    add[a * order + b] = s;
                    add[b * order + a] = s;
                    mul[a * order + b] = m;
                    mul[b * order + a] = m;
                }
            }
            ring.cache = Some((add, mul));
        }
        let mut neg = vec![0u32; order];
        for a in 0..order {
            neg[a] = ring.neg_raw(a) as u32;
        }
        ring.neg = neg;
        Arc::new(ring)
    }

    fn add_raw(&self, a: usize, b: usize) -> usize {
        match &self.arith {
            Arith::Residue(n) => (a + b) % *n as usize,
            Arith::Poly { p, .. } => {
                let fa = FpPoly::from_index(*p, a);
                let fb = FpPoly::from_index(*p, b);
                fa.add(&fb).to_index()
            }
            Arith::Product(x, y) => {
                let (a1, a2) = (a / y.order, a % y.order);
                let (b1, b2) = (b / y.order, b % y.order);
                x.add(Elem(a1 as u32), Elem(b1 as u32)).idx() * y.order
                    + y.add(Elem(a2 as u32), Elem(b2 as u32)).idx()
            }
            Arith::Table { add, .. } => add[a * self.order + b] as usize,
        }
    }

    fn mul_raw(&self, a: usize, b: usize) -> usize {
        match &self.arith {
            Arith::Residue(n) => (a * b) % *n as usize,
            Arith::Poly { p, modulus } => {
                let fa = FpPoly::from_index(*p, a);
                let fb = FpPoly::from_index(*p, b);
                fa.mul(&fb).rem(modulus).to_index()
            }
            Arith::Product(x, y) => {
                let (a1, a2) = (a / y.order, a % y.order);
                let (b1, b2) = (b / y.order, b % y.order);
                x.mul(Elem(a1 as u32), Elem(b1 as u32)).idx() * y.order
                    + y.mul(Elem(a2 as u32), Elem(b2 as u32)).idx()
            }
            Arith::Table { mul, .. } => mul[a * self.order + b] as usize,
        }
    }

    fn neg_raw(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.add(Elem(a as u32), Elem(b as u32)) == self.zero)
            .expect("every element of a finite ring has an additive inverse")
    }

    pub fn expr(&self) -> &RingExpr {
        &self.expr
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order as u32).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.cache {
            Some((add, _)) => Elem(add[a.idx() * self.order + b.idx()]),
            None => Elem(self.add_raw(a.idx(), b.idx()) as u32),
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.cache {
            Some((_, mul)) => Elem(mul[a.idx() * self.order + b.idx()]),
            None => Elem(self.mul_raw(a.idx(), b.idx()) as u32),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.idx()])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, e: usize) -> Elem {
        let mut acc = self.one;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        let mut x = a;
        for _ in 0..self.order {
            if x == self.zero {
                return true;
            }
            x = self.mul(x, a);
        }
        x == self.zero
    }

    /// Every commutative-ring axiom checked over all pairs and triples.
    pub fn verify_axioms(&self) -> Result<()> {
        if self.zero == self.one {
            return Err(Error::AxiomViolation("1 = 0".into()));
        }
        let fail = |what: &str, a: Elem, b: Elem, c: Option<Elem>| {
            let c = c.map(|c| format!(", {}", self.fmt_elem(c))).unwrap_or_default();
            Err(Error::AxiomViolation(format!(
                "{what} fails at ({}, {}{c})",
                self.fmt_elem(a),
                self.fmt_elem(b)
            )))
        };
        for a in self.elements() {
            if self.add(a, self.zero) != a {
                return fail("additive identity", a, self.zero, None);
            }
            if self.mul(a, self.one) != a {
                return fail("multiplicative identity", a, self.one, None);
            }
            if self.add(a, self.neg(a)) != self.zero {
                return fail("additive inverse", a, self.neg(a), None);
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", a, b, None);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplicative commutativity", a, b, None);
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", a, b, Some(c));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity", a, b, Some(c));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity", a, b, Some(c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn fmt_elem(&self, a: Elem) -> String {
        match &self.arith {
            Arith::Residue(_) => a.0.to_string(),
            Arith::Poly { p, .. } => FpPoly::from_index(*p, a.idx()).fmt_var("x"),
            Arith::Product(x, y) => {
                let (a1, a2) = (a.idx() / y.order, a.idx() % y.order);
                format!("[{},{}]", x.fmt_elem(Elem(a1 as u32)), y.fmt_elem(Elem(a2 as u32)))
            }
            Arith::Table { labels: Some(labels), .. } => labels[a.idx()].clone(),
            Arith::Table { labels: None, .. } => a.0.to_string(),
        }
    }

    /// Parse an element in the notation printed by [`FiniteRing::fmt_elem`].
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let text = text.trim();
        match &self.arith {
            Arith::Residue(n) => {
                let v: i64 = text
                    .parse()
                    .map_err(|_| Error::parse(0, format!("expected an integer, got {text:?}")))?;
                Ok(Elem(v.rem_euclid(*n as i64) as u32))
            }
            Arith::Poly { p, modulus } => {
                let f = FpPoly::parse(*p, 'x', text)?;
                Ok(Elem(f.rem(modulus).to_index() as u32))
            }
            Arith::Product(x, y) => {
                let inner = text
                    .strip_prefix('[')
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(|| Error::parse(0, format!("expected [a,b], got {text:?}")))?;
                let parts = split_top_level(inner, ',');
                if parts.len() != 2 {
                    return Err(Error::parse(0, format!("expected two components in {text:?}")));
                }
                let a = x.parse_elem(parts[0])?;
                let b = y.parse_elem(parts[1])?;
                Ok(Elem((a.idx() * y.order + b.idx()) as u32))
            }
            Arith::Table { labels, .. } => {
                if let Some(labels) = labels {
                    if let Some(i) = labels.iter().position(|l| l == text) {
                        return Ok(Elem(i as u32));
                    }
                }
                let v: usize = text
                    .parse()
                    .map_err(|_| Error::parse(0, format!("expected an element index, got {text:?}")))?;
                if v >= self.order {
                    return Err(Error::parse(0, format!("element {v} out of range")));
                }
                Ok(Elem(v as u32))
            }
        }
    }

    /// The factors of a product ring.
    pub fn factors(&self) -> Option<(&Arc<FiniteRing>, &Arc<FiniteRing>)> {
        match &self.arith {
            Arith::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Index of `(a, b)` in a product ring.
    pub fn pair(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.factors().map(|(_, y)| Elem((a.idx() * y.order + b.idx()) as u32))
    }

    /// Components of an element of a product ring.
    pub fn split(&self, e: Elem) -> Option<(Elem, Elem)> {
        self.factors()
            .map(|(_, y)| (Elem((e.idx() / y.order) as u32), Elem((e.idx() % y.order) as u32)))
    }
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        Err(Error::CapExceeded { order, cap })
    } else {
        Ok(())
    }
}

fn parse_atom(text: &str, pos: usize, cap: usize) -> Result<Arc<FiniteRing>> {
    if let Some(rest) = text.strip_prefix("Z/") {
        let n: u32 = rest
            .parse()
            .map_err(|_| Error::parse(pos + 2, format!("expected a modulus, got {rest:?}")))?;
        return FiniteRing::residue_with_cap(n, cap);
    }
    if let Some(name) = text.strip_prefix("table:") {
        let body = std::fs::read_to_string(name)
            .map_err(|e| Error::parse(pos + 6, format!("cannot read {name:?}: {e}")))?;
        return FiniteRing::from_table_text(name, &body);
    }
    if let Some(rest) = text.strip_prefix('F') {
        let open = rest
            .find("[x]/(")
            .ok_or_else(|| Error::parse(pos + 1, "expected F<p>[x]/(<poly>)"))?;
        let p: u32 = rest[..open]
            .parse()
            .map_err(|_| Error::parse(pos + 1, format!("bad characteristic {:?}", &rest[..open])))?;
        if !is_prime(p as u64) {
            return Err(Error::parse(pos + 1, format!("{p} is not prime")));
        }
        let body = &rest[open + 5..];
        let poly = body
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(pos + text.len(), "missing closing parenthesis"))?;
        let f = FpPoly::parse(p, 'x', poly).map_err(|e| match e {
            Error::Parse { pos: inner, msg } => Error::parse(pos + open + 6 + inner, msg),
            other => other,
        })?;
        return FiniteRing::poly_quotient_with_cap(p, &f, cap);
    }
    Err(Error::parse(pos, format!("unrecognized ring atom {text:?}")))
}

/// Split on `sep` outside of brackets and parentheses.
pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}
