//! Words in the standard presentation `<a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>`.
//!
//! Letters print as `a1`, `b2`, ... with capitals for inverses (`A1` is `a1^-1`).
//! Words compare in shortlex order with the generator order
//! `a1 < b1 < a2 < b2 < ... < A1 < B1 < A2 < B2 < ...`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A generator or its inverse. Field order gives the enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub inv: bool,
    /// `2(i-1)` for `a_i`, `2(i-1)+1` for `b_i`.
    pub gen: u8,
}

impl Letter {
    pub fn new(gen: u8, inv: bool) -> Self {
        Self { inv, gen }
    }

    pub fn a(i: u8) -> Self {
        Self::new(2 * (i - 1), false)
    }

    pub fn b(i: u8) -> Self {
        Self::new(2 * (i - 1) + 1, false)
    }

    pub fn inverse(self) -> Self {
        Self { inv: !self.inv, gen: self.gen }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match (self.gen % 2, self.inv) {
            (0, false) => 'a',
            (1, false) => 'b',
            (0, true) => 'A',
            _ => 'B',
        };
        write!(f, "{}{}", base, self.gen / 2 + 1)
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(|| Error::WordParse("empty letter".into()))?;
        let idx: u8 = chars
            .as_str()
            .parse()
            .map_err(|_| Error::WordParse(format!("bad generator index in `{s}`")))?;
        if idx == 0 || idx > 64 {
            return Err(Error::WordParse(format!("generator index out of range in `{s}`")));
        }
        let (offset, inv) = match head {
            'a' => (0, false),
            'b' => (1, false),
            'A' => (0, true),
            'B' => (1, true),
            _ => return Err(Error::WordParse(format!("unknown letter `{s}`"))),
        };
        Ok(Letter::new(2 * (idx - 1) + offset, inv))
    }
}

/// A word in the generators; operations return freely reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        free_reduce(&Word(v))
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        free_reduce(&Word(v))
    }

    /// `u w u^-1`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.inverse())
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && (self.len() < 2 || !self.0[0].cancels(self.0[self.len() - 1]))
    }

    /// Shortlex-least rotation.
    pub fn min_rotation(&self) -> Word {
        (0..self.len().max(1)).map(|k| self.rotate(k)).min().unwrap_or_default()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts whitespace-separated letters; `e` or an empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word::empty());
        }
        let letters = s.split_whitespace().map(Letter::from_str).collect::<Result<Vec<_>>>()?;
        Ok(free_reduce(&Word(letters)))
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        match out.last() {
            Some(&last) if last.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

pub fn cyclic_reduce(w: &Word) -> Word {
    let w = free_reduce(w);
    let v = &w.0;
    let (mut i, mut j) = (0, v.len());
    while j >= i + 2 && v[i].cancels(v[j - 1]) {
        i += 1;
        j -= 1;
    }
    Word(v[i..j].to_vec())
}

/// Genus and relator of the surface group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    genus: usize,
    relator: Word,
    /// All rotations of the relator and of its inverse.
    cycles: Vec<Vec<Letter>>,
}

impl Default for GroupPresentation {
    fn default() -> Self {
        Self::new(2).expect("genus 2 is valid")
    }
}

impl GroupPresentation {
    pub fn new(genus: usize) -> Result<Self> {
        if !(2..=32).contains(&genus) {
            return Err(Error::InvalidGenus(genus));
        }
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 1..=genus as u8 {
            let (a, b) = (Letter::a(i), Letter::b(i));
            letters.extend([a, b, a.inverse(), b.inverse()]);
        }
        let relator = Word(letters);
        let inv = relator.inverse();
        let n = relator.len();
        let mut cycles = Vec::with_capacity(2 * n);
        for base in [&relator, &inv] {
            for k in 0..n {
                cycles.push(base.rotate(k).0);
            }
        }
        Ok(Self { genus, relator, cycles })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn num_generators(&self) -> usize {
        2 * self.genus
    }

    /// Generators followed by inverses, in enumeration order.
    pub fn alphabet(&self) -> Vec<Letter> {
        let n = self.num_generators() as u8;
        let mut v: Vec<Letter> = (0..n).map(|g| Letter::new(g, false)).collect();
        v.extend((0..n).map(|g| Letter::new(g, true)));
        v
    }

    pub fn generator_words(&self) -> Vec<Word> {
        (0..self.num_generators() as u8).map(|g| Word::letter(Letter::new(g, false))).collect()
    }

    /// Dehn's algorithm: replace any piece longer than half a relator cycle by the inverse of its complement.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let mut cur = free_reduce(w);
        let half = self.relator.len() / 2;
        while let Some((pos, cycle, k)) = self.find_long_piece(&cur.0, half) {
            let cyc = &self.cycles[cycle];
            let replacement = cyc[k..].iter().rev().map(|l| l.inverse());
            let mut next = Vec::with_capacity(cur.len());
            next.extend_from_slice(&cur.0[..pos]);
            next.extend(replacement);
            next.extend_from_slice(&cur.0[pos + k..]);
            cur = free_reduce(&Word(next));
        }
        cur
    }

    fn find_long_piece(&self, w: &[Letter], half: usize) -> Option<(usize, usize, usize)> {
        let n = self.relator.len();
        for pos in 0..w.len() {
            for (ci, cyc) in self.cycles.iter().enumerate() {
                let k = w[pos..].iter().zip(cyc.iter()).take_while(|(x, y)| x == y).count();
                if k > half && k <= n {
                    return Some((pos, ci, k));
                }
            }
        }
        None
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    /// True when the cyclic word contains more than half of a relator cycle.
    pub fn has_long_cyclic_piece(&self, w: &Word) -> bool {
        let n = w.len();
        let half = self.relator.len() / 2;
        if n == 0 {
            return false;
        }
        let doubled: Vec<Letter> = w.0.iter().chain(w.0.iter()).copied().collect();
        (0..n).any(|pos| {
            self.cycles.iter().any(|cyc| {
                let k = doubled[pos..pos + n].iter().zip(cyc.iter()).take_while(|(x, y)| x == y).count();
                k > half
            })
        })
    }

    /// All freely reduced words of length `1..=maxlen` in shortlex order.
    pub fn words(&self, maxlen: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for n in 1..=maxlen {
            self.words_of_length(n, &mut |w| out.push(Word(w.to_vec())));
        }
        out
    }

    /// Visits every freely reduced word of length exactly `n` in lexicographic order.
    pub fn words_of_length(&self, n: usize, visit: &mut dyn FnMut(&[Letter])) {
        let alphabet = self.alphabet();
        let mut buf = Vec::with_capacity(n);
        fn rec(alpha: &[Letter], n: usize, buf: &mut Vec<Letter>, visit: &mut dyn FnMut(&[Letter])) {
            if buf.len() == n {
                visit(buf);
                return;
            }
            for &l in alpha {
                if let Some(&last) = buf.last() {
                    if last.cancels(l) {
                        continue;
                    }
                }
                buf.push(l);
                rec(alpha, n, buf, visit);
                buf.pop();
            }
        }
        if n > 0 {
            rec(&alphabet, n, &mut buf, visit);
        }
    }

    /// True when `w` is the representative this presentation enumerates for its conjugacy class.
    pub fn is_conjugacy_rep(&self, w: &Word) -> bool {
        !w.is_empty() && w.is_cyclically_reduced() && w.min_rotation() == *w && !self.has_long_cyclic_piece(w)
    }

    /// One cyclically reduced, rotation-minimal word per class, in shortlex order.
    ///
    /// Words conjugate to a shorter word through the relator are skipped. When `fingerprint`
    /// is given, words whose fingerprint was already seen are dropped as well.
    pub fn conjugacy_reps(&self, maxlen: usize, fingerprint: Option<&dyn Fn(&Word) -> [f64; 8]>) -> Vec<Word> {
        let mut out = Vec::new();
        let mut seen = crate::fingerprint::ApproxSet::<8>::new(1e-6);
        for n in 1..=maxlen {
            self.words_of_length(n, &mut |letters| {
                let w = Word(letters.to_vec());
                if !self.is_conjugacy_rep(&w) {
                    return;
                }
                if let Some(fp) = fingerprint {
                    if !seen.insert(&fp(&w)) {
                        return;
                    }
                }
                out.push(w);
            });
        }
        out
    }
}

/// Enumeration mode for [`enumerate_words`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    All,
    ConjugacyReps,
}

pub fn enumerate_words(pres: &GroupPresentation, maxlen: usize, mode: EnumerationMode) -> Vec<Word> {
    match mode {
        EnumerationMode::All => pres.words(maxlen),
        EnumerationMode::ConjugacyReps => pres.conjugacy_reps(maxlen, None),
    }
}
