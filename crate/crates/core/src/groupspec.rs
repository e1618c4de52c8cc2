//! The groupspec mini-language: parsing into a construction tree and building
//! permutation groups from it.
//!
//! ```text
//! spec    := product
//! product := power (('x' | '*') power)*
//! power   := primary ('^' NUM)?
//! primary := '(' spec ')' | atom
//! atom    := C(n) | D(n) | Q(n) | SD(n) | S(n) | A(n)       (also C4, D8, SD16, ..)
//!          | PSL(2,q) | PGL(2,q) | SL(2,q) | GL(2,q) | PGLstar(q) | M10
//!          | PSL(2,q).2sigma | PGL(2,q).2sigma | SL(2,q).2q | SL(2,q).2sd
//!          | FR(spec, spec) | wr(C4,C2) | cat(label) | fixture(name)
//!          | sd(C(n)^k; matrix, ..)    matrix := [[a,b],[c,d]]
//! ```
//! `x` is the direct product and `*` the central product over the unique
//! central involutions.

use std::fmt;
use std::path::PathBuf;

use crate::constructions::{self, find_index2_copy, fong_reynolds, FongReynolds};
use crate::error::{Error, Result};
use crate::factory::{self, LinearKind};
use crate::fixture;
use crate::group::Group;
use crate::iso::{is_isomorphic, Fingerprint, MAX_ISO_ORDER};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Semidihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Linear(LinearKind, u32),
    PglStar(u32),
    Sl2Q(u32),
    Sl2Sd(u32),
    Catalog(String),
    Fixture(String),
    Wreath,
    Affine { n: u64, dim: usize, mats: Vec<Vec<Vec<i64>>> },
    Direct(Box<Spec>, Box<Spec>),
    Central(Box<Spec>, Box<Spec>),
    Power(Box<Spec>, u32),
    Fr(Box<Spec>, Box<Spec>),
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Spec::*;
        match self {
            Cyclic(n) => write!(f, "C({n})"),
            Dihedral(n) => write!(f, "D({n})"),
            Quaternion(n) => write!(f, "Q({n})"),
            Semidihedral(n) => write!(f, "SD({n})"),
            Symmetric(n) => write!(f, "S({n})"),
            Alternating(n) => write!(f, "A({n})"),
            Linear(k, q) => match k {
                LinearKind::Gl => write!(f, "GL(2,{q})"),
                LinearKind::Sl => write!(f, "SL(2,{q})"),
                LinearKind::Pgl => write!(f, "PGL(2,{q})"),
                LinearKind::Psl => write!(f, "PSL(2,{q})"),
                LinearKind::PslSigma => write!(f, "PSL(2,{q}).2sigma"),
                LinearKind::PglSigma => write!(f, "PGL(2,{q}).2sigma"),
            },
            PglStar(q) => write!(f, "PGLstar({q})"),
            Sl2Q(q) => write!(f, "SL(2,{q}).2q"),
            Sl2Sd(q) => write!(f, "SL(2,{q}).2sd"),
            Catalog(l) => write!(f, "cat({l})"),
            Fixture(n) => write!(f, "fixture({n})"),
            Wreath => write!(f, "wr(C4,C2)"),
            Affine { n, dim, mats } => {
                write!(f, "sd(C({n})^{dim};")?;
                for (i, m) in mats.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    let rows: Vec<String> = m
                        .iter()
                        .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
                        .collect();
                    write!(f, "[{}]", rows.join(","))?;
                }
                write!(f, ")")
            }
            Direct(a, b) => write!(f, "{} x {}", paren(a), paren(b)),
            Central(a, b) => write!(f, "{} * {}", paren(a), paren(b)),
            Power(a, k) => write!(f, "{}^{k}", paren(a)),
            Fr(a, b) => write!(f, "FR({a},{b})"),
        }
    }
}

fn paren(s: &Spec) -> String {
    match s {
        Spec::Direct(..) | Spec::Central(..) => format!("({s})"),
        _ => s.to_string(),
    }
}

pub fn parse(text: &str) -> Result<Spec> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let spec = p.product()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "number out of range".into(),
            })
    }

    fn signed(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let v = self.number()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a group name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    /// Raw text up to the matching close parenthesis.
    fn raw_arg(&mut self) -> Result<String> {
        self.expect(b'(')?;
        let start = self.pos;
        let mut depth = 1;
        while self.pos < self.s.len() {
            match self.s[self.pos] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        let out = String::from_utf8_lossy(&self.s[start..self.pos]).trim().to_string();
                        self.pos += 1;
                        if out.is_empty() {
                            return Err(Error::Parse {
                                pos: start,
                                msg: "empty argument".into(),
                            });
                        }
                        return Ok(out);
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        Err(self.err("unclosed parenthesis"))
    }

    fn product(&mut self) -> Result<Spec> {
        let mut left = self.power()?;
        loop {
            if self.eat(b'x') {
                left = Spec::Direct(Box::new(left), Box::new(self.power()?));
            } else if self.eat(b'*') {
                left = Spec::Central(Box::new(left), Box::new(self.power()?));
            } else {
                return Ok(left);
            }
        }
    }

    fn power(&mut self) -> Result<Spec> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let k = self.number()?;
            if !(1..=4).contains(&k) {
                return Err(self.err("power must be between 1 and 4"));
            }
            return Ok(Spec::Power(Box::new(base), k as u32));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Spec> {
        if self.eat(b'(') {
            let s = self.product()?;
            self.expect(b')')?;
            return Ok(s);
        }
        self.atom()
    }

    /// `n` either as `(n)` or as digits glued to the name.
    fn size_arg(&mut self) -> Result<usize> {
        let v = if self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.number()?
        } else {
            self.expect(b'(')?;
            let v = self.number()?;
            self.expect(b')')?;
            v
        };
        usize::try_from(v).map_err(|_| self.err("size out of range"))
    }

    /// `(2,q)` for the linear groups.
    fn two_q(&mut self) -> Result<u32> {
        self.expect(b'(')?;
        let at = self.pos;
        if self.number()? != 2 {
            return Err(Error::Parse {
                pos: at,
                msg: "only 2x2 linear groups are supported".into(),
            });
        }
        self.expect(b',')?;
        let q = self.number()?;
        self.expect(b')')?;
        u32::try_from(q).map_err(|_| self.err("q out of range"))
    }

    fn suffix(&mut self) -> Option<String> {
        if self.s.get(self.pos) != Some(&b'.') {
            return None;
        }
        let start = self.pos + 1;
        let mut end = start;
        while end < self.s.len() && self.s[end].is_ascii_alphanumeric() {
            end += 1;
        }
        self.pos = end;
        Some(String::from_utf8_lossy(&self.s[start..end]).into_owned())
    }

    fn atom(&mut self) -> Result<Spec> {
        self.ws();
        let start = self.pos;
        let name = self.ident()?;
        let bad = |msg: String| Error::Parse { pos: start, msg };
        let spec = match name.as_str() {
            "C" => Spec::Cyclic(self.size_arg()?),
            "D" => Spec::Dihedral(self.size_arg()?),
            "Q" => Spec::Quaternion(self.size_arg()?),
            "SD" => Spec::Semidihedral(self.size_arg()?),
            "S" => Spec::Symmetric(self.size_arg()?),
            "A" => Spec::Alternating(self.size_arg()?),
            "M" => match self.size_arg()? {
                10 => Spec::PglStar(9),
                n => return Err(bad(format!("unknown group M{n}"))),
            },
            "PSL" | "PGL" | "SL" | "GL" | "PGammaL" => {
                let q = self.two_q()?;
                let suffix = self.suffix();
                match (name.as_str(), suffix.as_deref()) {
                    ("PSL", None) => Spec::Linear(LinearKind::Psl, q),
                    ("PGL", None) => Spec::Linear(LinearKind::Pgl, q),
                    ("SL", None) => Spec::Linear(LinearKind::Sl, q),
                    ("GL", None) => Spec::Linear(LinearKind::Gl, q),
                    ("PGammaL", None) | ("PGL", Some("2sigma")) => Spec::Linear(LinearKind::PglSigma, q),
                    ("PSL", Some("2sigma")) => Spec::Linear(LinearKind::PslSigma, q),
                    ("SL", Some("2q")) => Spec::Sl2Q(q),
                    ("SL", Some("2sd")) => Spec::Sl2Sd(q),
                    (n, Some(s)) => return Err(bad(format!("unknown extension {n}(2,{q}).{s}"))),
                    _ => unreachable!("names listed above"),
                }
            }
            "PGLstar" => {
                self.expect(b'(')?;
                let q = self.number()?;
                self.expect(b')')?;
                Spec::PglStar(u32::try_from(q).map_err(|_| self.err("q out of range"))?)
            }
            "FR" => {
                self.expect(b'(')?;
                let h = self.product()?;
                self.expect(b',')?;
                let hh = self.product()?;
                self.expect(b')')?;
                Spec::Fr(Box::new(h), Box::new(hh))
            }
            "wr" => {
                let arg = self.raw_arg()?;
                if arg.replace(' ', "") != "C4,C2" {
                    return Err(bad(format!("only wr(C4,C2) is supported, got wr({arg})")));
                }
                Spec::Wreath
            }
            "cat" => Spec::Catalog(self.raw_arg()?),
            "fixture" => Spec::Fixture(self.raw_arg()?),
            "sd" => self.affine()?,
            other => return Err(bad(format!("unknown group name '{other}'"))),
        };
        Ok(spec)
    }

    fn affine(&mut self) -> Result<Spec> {
        self.expect(b'(')?;
        let at = self.pos;
        let name = self.ident()?;
        if name != "C" {
            return Err(Error::Parse {
                pos: at,
                msg: "sd base must be C(n)^k".into(),
            });
        }
        let n = self.size_arg()? as u64;
        self.expect(b'^')?;
        let dim = self.number()? as usize;
        self.expect(b';')?;
        let mut mats = Vec::new();
        loop {
            let at = self.pos;
            let m = self.matrix()?;
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("matrix must be {dim}x{dim}"),
                });
            }
            mats.push(m);
            if !self.eat(b',') {
                break;
            }
        }
        self.expect(b')')?;
        Ok(Spec::Affine { n, dim, mats })
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>> {
        self.expect(b'[')?;
        let mut rows = Vec::new();
        loop {
            self.expect(b'[')?;
            let mut row = vec![self.signed()?];
            while self.eat(b',') {
                row.push(self.signed()?);
            }
            self.expect(b']')?;
            rows.push(row);
            if !self.eat(b',') {
                break;
            }
        }
        self.expect(b']')?;
        Ok(rows)
    }
}

/// Where fixtures live and how large a group may get.
#[derive(Clone, Debug)]
pub struct BuildContext {
    pub fixtures: Option<PathBuf>,
    pub max_order: usize,
}

impl Default for BuildContext {
    fn default() -> Self {
        BuildContext {
            fixtures: None,
            max_order: crate::group::DEFAULT_BOUND,
        }
    }
}

/// A built group, with its natural index-2 subgroup when the recipe has one,
/// and the gluing data for `FR` nodes.
#[derive(Clone, Debug)]
pub struct Built {
    pub group: Group,
    pub base: Option<Group>,
    pub fr: Option<FongReynolds>,
}

impl Built {
    fn plain(group: Group) -> Built {
        Built {
            group,
            base: None,
            fr: None,
        }
    }
}

fn prefix_subgroup(top: &Group, k: usize) -> Result<Group> {
    top.subgroup_generated(&top.generators()[..k])
}

pub fn build(spec: &Spec, ctx: &BuildContext) -> Result<Built> {
    let mut b = build_inner(spec, ctx)?;
    if b.group.order() > ctx.max_order {
        return Err(Error::TooLarge { bound: ctx.max_order });
    }
    b.group = b.group.named(spec.to_string());
    Ok(b)
}

fn build_inner(spec: &Spec, ctx: &BuildContext) -> Result<Built> {
    use Spec::*;
    Ok(match spec {
        Cyclic(n) => Built::plain(factory::cyclic(*n)?),
        Dihedral(n) => Built::plain(factory::dihedral(*n)?),
        Quaternion(n) => Built::plain(factory::quaternion(*n)?),
        Semidihedral(n) => Built::plain(factory::semidihedral(*n)?),
        Symmetric(n) => {
            let g = factory::symmetric(*n)?;
            let a = factory::alternating(*n)?;
            let base = (*n >= 2 && a.is_subgroup_of(&g)).then_some(a);
            Built { group: g, base, fr: None }
        }
        Alternating(n) => Built::plain(factory::alternating(*n)?),
        Linear(kind, q) => {
            let g = factory::linear(*kind, *q)?;
            let base = match kind {
                LinearKind::Pgl | LinearKind::PslSigma => Some(factory::linear(LinearKind::Psl, *q)?),
                LinearKind::PglSigma => Some(factory::linear(LinearKind::Pgl, *q)?),
                _ => None,
            };
            Built { group: g, base, fr: None }
        }
        PglStar(q) => ext(constructions::pgl_star(*q)?),
        Sl2Q(q) => ext(constructions::sl2_q_extension(*q)?),
        Sl2Sd(q) => ext(constructions::sl2_sd_extension(*q)?),
        Catalog(label) => Built::plain(crate::iso::catalog_group(label)?),
        Fixture(name) => {
            let dir = ctx
                .fixtures
                .as_ref()
                .ok_or_else(|| Error::Fixture(format!("fixture '{name}' requested but no fixture directory given")))?;
            Built::plain(fixture::load(&dir.join(format!("{name}.json")))?.group)
        }
        Wreath => Built::plain(factory::wreath_c4_c2()?),
        Affine { n, mats, .. } => {
            let g = factory::affine(*n, mats)?;
            let base = if mats.len() > 1 {
                Some(prefix_subgroup(&g, g.generators().len() - 1)?)
            } else {
                None
            };
            Built { group: g, base, fr: None }
        }
        Direct(a, b) => {
            let a = build(a, ctx)?.group;
            let b = build(b, ctx)?.group;
            let g = factory::direct_product(&a, &b)?;
            let base = if b.order() == 2 {
                Some(prefix_subgroup(&g, a.generators().len())?)
            } else {
                None
            };
            Built { group: g, base, fr: None }
        }
        Central(a, b) => {
            let a = build(a, ctx)?.group;
            let b = build(b, ctx)?.group;
            let g = factory::central_product(&a, &b)?;
            let base = if b.order() == 4 {
                Some(prefix_subgroup(&g, a.generators().len())?)
            } else {
                None
            };
            Built { group: g, base, fr: None }
        }
        Power(a, k) => {
            let a = build(a, ctx)?.group;
            let mut g = a.clone();
            for _ in 1..*k {
                g = factory::direct_product(&g, &a)?;
            }
            Built::plain(g)
        }
        Fr(h, hh) => {
            let h = build(h, ctx)?.group;
            let hh = build(hh, ctx)?;
            let base = resolve_base(&h, &hh)?;
            let fr = fong_reynolds(&base, &hh.group)?;
            Built {
                group: fr.g.clone(),
                base: None,
                fr: Some(fr),
            }
        }
    })
}

fn ext(e: constructions::Extension) -> Built {
    Built {
        group: e.top,
        base: Some(e.base),
        fr: None,
    }
}

fn same_type(a: &Group, b: &Group) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if a.order().is_power_of_two() && a.order() <= MAX_ISO_ORDER {
        return is_isomorphic(a, b);
    }
    Fingerprint::of(a) == Fingerprint::of(b)
}

/// The copy of `H` inside `Hhat` used for the gluing: the natural index-2
/// subgroup of the recipe, `H` itself, `H` shifted into the first points, or a
/// search among index-2 subgroups of a 2-group.
fn resolve_base(h: &Group, hh: &Built) -> Result<Group> {
    let top = &hh.group;
    if h.order() * 2 != top.order() {
        return Err(Error::Construction(format!(
            "FR needs |Hhat| = 2|H|, got {} and {}",
            h.order(),
            top.order()
        )));
    }
    if let Some(b) = &hh.base {
        if same_type(b, h) {
            return Ok(b.clone().named(h.name().unwrap_or_default()));
        }
    }
    if h.degree() == top.degree() && h.is_subgroup_of(top) {
        return Ok(h.clone());
    }
    if h.degree() < top.degree() {
        let shifted = Group::new(h.generators().iter().map(|x| x.shifted(0, top.degree())).collect())?;
        if shifted.is_subgroup_of(top) {
            return Ok(shifted.named(h.name().unwrap_or_default()));
        }
    }
    if top.order().is_power_of_two() && top.order() <= MAX_ISO_ORDER {
        return Ok(find_index2_copy(h, top)?.named(h.name().unwrap_or_default()));
    }
    Err(Error::Construction(format!(
        "cannot locate {} as an index-2 subgroup of {}",
        h.name().unwrap_or("H"),
        top.name().unwrap_or("Hhat")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("FR(Q8,Q16)").unwrap(),
            Spec::Fr(Box::new(Spec::Quaternion(8)), Box::new(Spec::Quaternion(16)))
        );
        assert_eq!(parse("PSL(2,7)").unwrap(), Spec::Linear(LinearKind::Psl, 7));
        assert_eq!(
            parse("D(8) x S(3)").unwrap(),
            Spec::Direct(Box::new(Spec::Dihedral(8)), Box::new(Spec::Symmetric(3)))
        );
        assert_eq!(parse("SL(2,3).2sd").unwrap(), Spec::Sl2Sd(3));
        assert_eq!(parse("cat(C8:C2^2)").unwrap(), Spec::Catalog("C8:C2^2".into()));
        assert_eq!(parse("C4xC4").unwrap(), parse("C(4) x C(4)").unwrap());
        assert_eq!(parse("fixture(id24)").unwrap(), Spec::Fixture("id24".into()));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "FR(PSL(2,9),PGLstar(9))",
            "(D8*C4)xC2",
            "sd(C(4)^2;[[0,-1],[1,-1]],[[0,1],[1,0]])",
            "FR(C4^2,wr(C4,C2))",
            "PGL(2,9).2sigma x S3",
        ] {
            let t = parse(s).unwrap();
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{s}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("FR(Q8,"), 6);
        assert_eq!(pos("D8 x Foo(3)"), 5);
        assert_eq!(pos("PSL(3,7)"), 4);
        assert_eq!(pos("Q8)"), 2);
        assert_eq!(pos(""), 0);
    }

    #[test]
    fn builds_and_glues() {
        let ctx = BuildContext::default();
        let g = build(&parse("FR(D8,SD16)").unwrap(), &ctx).unwrap();
        assert_eq!(g.group.order(), 48);
        let g = build(&parse("FR(SL(2,3),SL(2,3).2q)").unwrap(), &ctx).unwrap();
        assert_eq!(g.group.order(), 144);
        let g = build(&parse("FR(D8,D8xC2)").unwrap(), &ctx).unwrap();
        assert_eq!(g.group.order(), 48);
        let g = build(&parse("FR(Q8,Q8*C4)").unwrap(), &ctx).unwrap();
        assert_eq!(g.group.order(), 48);
        let g = build(&parse("FR(C4xC4,cat(C8:C4))").unwrap(), &ctx).unwrap();
        assert_eq!(g.group.order(), 96);
        let g = build(&parse("FR(PSL(2,7),PGL(2,7))").unwrap(), &ctx).unwrap();
        assert_eq!(g.group.order(), 1008);
        let hc = "sd(C(4)^2;[[0,-1],[1,-1]])";
        let g = build(&parse(&format!("FR({hc},sd(C(4)^2;[[0,-1],[1,-1]],[[0,1],[1,0]]))")).unwrap(), &ctx).unwrap();
        assert_eq!(g.group.order(), 288);
        assert!(matches!(
            build(&parse("S(7)").unwrap(), &BuildContext { fixtures: None, max_order: 1000 }),
            Err(Error::TooLarge { .. })
        ));
    }
}
