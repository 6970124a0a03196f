//! Scalar symbols with an explicit conjugation involution.

use std::collections::HashMap;

use super::ExteriorError;

pub type Sym = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolEntry {
    pub name: String,
    pub conj: Sym,
    pub real: bool,
}

/// Registry of scalar symbols. A complex symbol and its conjugate are two
/// independent ring variables linked by `conj`; a real symbol is its own
/// conjugate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    entries: Vec<SymbolEntry>,
    by_name: HashMap<String, Sym>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare_real(&mut self, name: &str) -> Result<Sym, ExteriorError> {
        if let Some(&s) = self.by_name.get(name) {
            return if self.entries[s as usize].real {
                Ok(s)
            } else {
                Err(ExteriorError::Config(format!("symbol {name} already declared complex")))
            };
        }
        let id = self.entries.len() as Sym;
        self.entries.push(SymbolEntry { name: name.to_string(), conj: id, real: true });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    /// Declares `name` and its conjugate `conj_name`.
    pub fn declare_complex(&mut self, name: &str, conj_name: &str) -> Result<(Sym, Sym), ExteriorError> {
        match (self.by_name.get(name), self.by_name.get(conj_name)) {
            (Some(&a), Some(&b)) if self.entries[a as usize].conj == b => return Ok((a, b)),
            (None, None) => {}
            _ => {
                return Err(ExteriorError::Config(format!(
                    "conflicting declaration of {name}/{conj_name}"
                )))
            }
        }
        if name == conj_name {
            return Err(ExteriorError::Config(format!("complex symbol {name} needs a distinct conjugate")));
        }
        let a = self.entries.len() as Sym;
        let b = a + 1;
        self.entries.push(SymbolEntry { name: name.to_string(), conj: b, real: false });
        self.entries.push(SymbolEntry { name: conj_name.to_string(), conj: a, real: false });
        self.by_name.insert(name.to_string(), a);
        self.by_name.insert(conj_name.to_string(), b);
        Ok((a, b))
    }

    /// Declares `name` with conjugate `name` + `bar`.
    pub fn declare_complex_bar(&mut self, name: &str) -> Result<(Sym, Sym), ExteriorError> {
        self.declare_complex(name, &format!("{name}bar"))
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.by_name.get(name).copied()
    }

    pub fn get(&self, name: &str) -> Result<Sym, ExteriorError> {
        self.lookup(name).ok_or_else(|| ExteriorError::UnknownSymbol(name.to_string()))
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.entries[s as usize].name
    }

    pub fn conj(&self, s: Sym) -> Sym {
        self.entries[s as usize].conj
    }

    pub fn is_real(&self, s: Sym) -> bool {
        self.entries[s as usize].real
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[SymbolEntry] {
        &self.entries
    }

    /// Symbols whose conjugate has a larger id, plus all real symbols.
    pub fn representatives(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.entries.len() as Sym).filter(move |&s| self.conj(s) >= s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution() {
        let mut t = SymbolTable::new();
        let (a, abar) = t.declare_complex_bar("a").unwrap();
        let b = t.declare_real("b").unwrap();
        assert_eq!(t.conj(a), abar);
        assert_eq!(t.conj(abar), a);
        assert_eq!(t.conj(b), b);
        assert_eq!(t.representatives().collect::<Vec<_>>(), vec![a, b]);
        assert!(t.declare_real("a").is_err());
        assert_eq!(t.declare_complex_bar("a").unwrap(), (a, abar));
    }
}
