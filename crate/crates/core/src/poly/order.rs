use std::cmp::Ordering;

/// Monomial orders on exponent vectors; variable 0 is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Two-block elimination order: variables flagged `true` form the first
    /// block and dominate; ties are broken by grevlex on the remaining block.
    /// Inside each block grevlex is used.
    Block(Vec<bool>),
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::GrevLex
    }
}

fn grevlex_on(a: &[u32], b: &[u32], keep: impl Fn(usize) -> bool) -> Ordering {
    let da: u64 = a.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, &e)| e as u64).sum();
    let db: u64 = b.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, &e)| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if !keep(i) {
            continue;
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex_on(a, b, |_| true),
            MonomialOrder::Block(mask) => {
                let first = |i: usize| mask.get(i).copied().unwrap_or(false);
                match grevlex_on(a, b, first) {
                    Ordering::Equal => grevlex_on(a, b, |i| !first(i)),
                    o => o,
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Block(mask) => {
                let bits: String = mask.iter().map(|&b| if b { '1' } else { '0' }).collect();
                format!("block({bits})")
            }
        }
    }
}
