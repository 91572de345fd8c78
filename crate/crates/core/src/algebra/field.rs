use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which extension-field log/exp tables are built.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 22;
const ADD_TABLE_ORDER: u64 = 256;

/// Wire description of a finite field GF(p^q).
///
/// `modulus` holds the coefficients of the defining polynomial, low to high
/// degree. For prime fields it is `[0, 1]` and is otherwise ignored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub q: u32,
    #[serde(default)]
    pub modulus: Vec<u64>,
}

/// A field element, stored as the integer `sum c_i p^i` of its coefficients
/// in the polynomial basis. Only meaningful together with its [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The integer encoding of this element.
    pub fn index(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

struct ExtTables {
    // exp has length 2 * (order - 1) so log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
}

struct Inner {
    spec: FieldSpec,
    order: u64,
    ext: Option<ExtTables>,
}

/// Arithmetic context for GF(p^q). Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.spec.p, self.inner.spec.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})", self.p(), self.q())
        }
    }
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    /// GF(p^q) with the default modulus (see [`default_modulus`]).
    pub fn new(p: u64, q: u32) -> Result<Field> {
        check_characteristic(p)?;
        if q == 0 {
            return Err(Error::InvalidField(
                "extension degree must be at least 1".into(),
            ));
        }
        let modulus = if q == 1 {
            vec![0, 1]
        } else {
            default_modulus(p, q)?
        };
        Field::build(FieldSpec { p, q, modulus })
    }

    /// Builds a field from its wire description, validating the modulus.
    /// An empty modulus selects the default one.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        check_characteristic(spec.p)?;
        if spec.q == 0 {
            return Err(Error::InvalidField(
                "extension degree must be at least 1".into(),
            ));
        }
        if spec.q == 1 || spec.modulus.is_empty() {
            return Field::new(spec.p, spec.q);
        }
        let m = &spec.modulus;
        if m.len() != spec.q as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus has {} coefficients, expected {}",
                m.len(),
                spec.q + 1
            )));
        }
        if m.iter().any(|&c| c >= spec.p) {
            return Err(Error::InvalidField(
                "modulus coefficient out of range".into(),
            ));
        }
        if m[spec.q as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !is_irreducible(m, spec.p) {
            return Err(Error::InvalidField(format!(
                "modulus {m:?} is reducible over GF({})",
                spec.p
            )));
        }
        Field::build(spec.clone())
    }

    fn build(spec: FieldSpec) -> Result<Field> {
        let order = spec
            .p
            .checked_pow(spec.q)
            .filter(|&o| o <= u32::MAX as u64)
            .ok_or_else(|| {
                Error::InvalidField(format!("GF({}^{}) is too large", spec.p, spec.q))
            })?;
        let ext = if spec.q > 1 {
            if order > MAX_EXTENSION_ORDER {
                return Err(Error::InvalidField(format!(
                    "extension fields are limited to order {MAX_EXTENSION_ORDER}"
                )));
            }
            Some(ExtTables::build(&spec, order))
        } else {
            None
        };
        Ok(Field {
            inner: Arc::new(Inner { spec, order, ext }),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    /// The characteristic.
    pub fn p(&self) -> u64 {
        self.inner.spec.p
    }

    /// The extension degree.
    pub fn q(&self) -> u32 {
        self.inner.spec.q
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Image of the integer `k` in the prime subfield.
    pub fn from_u64(&self, k: u64) -> Elem {
        Elem((k % self.p()) as u32)
    }

    /// Image of a signed integer in the prime subfield.
    pub fn from_i64(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p() as i64) as u32)
    }

    /// The element with integer encoding `index`.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index >= self.order() {
            return Err(Error::ForeignElement {
                value: index,
                order: self.order(),
            });
        }
        Ok(Elem(index as u32))
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.index() < self.order()
    }

    /// All elements in encoding order, starting with zero and one.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order() as u32).map(Elem)
    }

    /// Polynomial-basis coefficients, low to high, exactly `q` of them.
    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        let p = self.p();
        let mut v = a.index();
        (0..self.q())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() != self.q() as usize {
            return Err(Error::InvalidField(format!(
                "element has {} coefficients, field {} expects {}",
                coeffs.len(),
                self,
                self.q()
            )));
        }
        let p = self.p();
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::ForeignElement { value: c, order: p });
            }
            v = v * p + c;
        }
        Ok(Elem(v as u32))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.ext {
            None => {
                let s = a.0 as u64 + b.0 as u64;
                let p = self.p();
                Elem(if s >= p { s - p } else { s } as u32)
            }
            Some(t) if !t.add.is_empty() => {
                Elem(t.add[(a.0 as usize) * self.order() as usize + b.0 as usize])
            }
            Some(_) => self.digitwise(a, b, |x, y, p| (x + y) % p),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.inner.ext {
            None => {
                if a.0 == 0 {
                    a
                } else {
                    Elem((self.p() - a.0 as u64) as u32)
                }
            }
            Some(_) => self.digitwise(Elem::ZERO, a, |_, y, p| (p - y) % p),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.ext {
            None => {
                let p = self.p();
                let (a, b) = (a.0 as u64, b.0 as u64);
                Elem(if a >= b { a - b } else { a + p - b } as u32)
            }
            Some(_) => self.add(a, self.neg(b)),
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.ext {
            None => Elem((a.0 as u64 * b.0 as u64 % self.p()) as u32),
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    Elem::ZERO
                } else {
                    Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
                }
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        match &self.inner.ext {
            None => Some(Elem(mod_inverse(a.0 as u64, self.p()) as u32)),
            Some(t) => {
                let n = (self.order() - 1) as u32;
                let l = t.log[a.0 as usize];
                Some(Elem(t.exp[((n - l) % n) as usize]))
            }
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = &self.inner.ext {
            let n = self.order() - 1;
            let l = (t.log[a.0 as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return Elem(t.exp[l]);
        }
        let p = self.p();
        let mut base = a.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Elem(acc as u32)
    }

    /// The Frobenius map a -> a^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p())
    }

    /// The unique p-th root: a -> a^(p^(q-1)).
    pub fn pth_root(&self, a: Elem) -> Elem {
        let mut r = a;
        for _ in 1..self.q() {
            r = self.frobenius(r);
        }
        r
    }

    /// Checked arithmetic: rejects elements outside this field and division
    /// by zero.
    pub fn arith(&self, a: Elem, b: Elem, op: ArithOp) -> Result<Elem> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::ForeignElement {
                    value: x.index(),
                    order: self.order(),
                });
            }
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    fn digitwise(&self, a: Elem, b: Elem, f: impl Fn(u64, u64, u64) -> u64) -> Elem {
        let p = self.p();
        let (mut x, mut y) = (a.index(), b.index());
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.q() {
            out += f(x % p, y % p, p) * scale;
            x /= p;
            y /= p;
            scale *= p;
        }
        Elem(out as u32)
    }
}

impl ExtTables {
    fn build(spec: &FieldSpec, order: u64) -> ExtTables {
        let p = spec.p;
        let q = spec.q as usize;
        let decode = |mut v: u64| -> Vec<u64> {
            (0..q)
                .map(|_| {
                    let c = v % p;
                    v /= p;
                    c
                })
                .collect()
        };
        let encode = |c: &[u64]| c.iter().rev().fold(0u64, |acc, &x| acc * p + x);
        let n = (order - 1) as usize;

        // Search for a primitive element; the modulus need not be primitive.
        let mut exp = Vec::new();
        for g in 2..order {
            let gc = decode(g);
            let mut powers = Vec::with_capacity(n);
            let mut cur = vec![0u64; q];
            cur[0] = 1;
            loop {
                powers.push(encode(&cur) as u32);
                cur = poly_mul_mod(&cur, &gc, &spec.modulus, p);
                if encode(&cur) == 1 || powers.len() > n {
                    break;
                }
            }
            if powers.len() == n {
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; order as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();

        let add = if order <= ADD_TABLE_ORDER {
            let mut t = vec![0u32; (order * order) as usize];
            for a in 0..order {
                let ac = decode(a);
                for b in 0..order {
                    let bc = decode(b);
                    let s: Vec<u64> = ac.iter().zip(&bc).map(|(x, y)| (x + y) % p).collect();
                    t[(a * order + b) as usize] = encode(&s) as u32;
                }
            }
            t
        } else {
            Vec::new()
        };
        ExtTables {
            exp: doubled,
            log,
            add,
        }
    }
}

/// Product of two residues-mod-modulus (length q coefficient vectors).
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let q = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * q - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (q..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        // t^q = -(m_0 + ... + m_{q-1} t^{q-1})
        for k in 0..q {
            prod[d - q + k] = (prod[d - q + k] + (p - modulus[k]) % p * c) % p;
        }
    }
    prod.truncate(q);
    prod
}

fn check_characteristic(p: u64) -> Result<()> {
    if p >= 1 << 31 {
        return Err(Error::InvalidField(format!(
            "characteristic {p} exceeds 2^31"
        )));
    }
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    t0.rem_euclid(p as i64) as u64
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (k, &c) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p - c * lead % p)) % p;
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility by trial division against all monic polynomials of degree
/// at most half the degree.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut cand: Vec<u64> = Vec::with_capacity(d + 1);
            let mut v = low;
            for _ in 0..d {
                cand.push(v % p);
                v /= p;
            }
            cand.push(1);
            if poly_rem(m, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `q` over GF(p) whose lower coefficients,
/// read from t^(q-1) down to t^0, form the smallest base-p integer.
pub fn default_modulus(p: u64, q: u32) -> Result<Vec<u64>> {
    let count = p
        .checked_pow(q)
        .ok_or_else(|| Error::InvalidField(format!("GF({p}^{q}) is too large")))?;
    for low in 0..count {
        let mut m = Vec::with_capacity(q as usize + 1);
        let mut v = low;
        for _ in 0..q {
            m.push(v % p);
            v /= p;
        }
        m.push(1);
        if is_irreducible(&m, p) {
            return Ok(m);
        }
    }
    Err(Error::InvalidField(format!(
        "no irreducible of degree {q} over GF({p})"
    )))
}
