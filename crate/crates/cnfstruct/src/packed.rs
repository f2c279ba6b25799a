//! Two-word clause encoding for variables 1..=64.

use crate::model::{Clause, Lit, Var};

/// Bit `v-1` of `pos` (resp. `neg`) is set iff `v` (resp. `v̄`) is in the clause.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedClause {
    pub pos: u64,
    pub neg: u64,
}

impl PackedClause {
    pub const MAX_VAR: Var = 64;

    /// `None` if some variable exceeds 64.
    pub fn from_clause(c: &Clause) -> Option<PackedClause> {
        let mut p = PackedClause::default();
        for &x in c.lits() {
            if x.var() > Self::MAX_VAR {
                return None;
            }
            let bit = 1u64 << (x.var() - 1);
            if x.is_pos() {
                p.pos |= bit;
            } else {
                p.neg |= bit;
            }
        }
        Some(p)
    }

    pub fn to_clause(self) -> Clause {
        let mut lits = Vec::with_capacity(self.len());
        let mut vars = self.vars();
        while vars != 0 {
            let v = vars.trailing_zeros() + 1;
            lits.push(Lit::from_var(v, self.pos & (1 << (v - 1)) != 0));
            vars &= vars - 1;
        }
        Clause::from_sorted_unchecked(lits)
    }

    pub fn vars(self) -> u64 {
        self.pos | self.neg
    }

    pub fn len(self) -> usize {
        self.vars().count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.vars() == 0
    }

    pub fn clash_count(self, other: PackedClause) -> u32 {
        ((self.pos & other.neg) | (self.neg & other.pos)).count_ones()
    }

    pub fn clashes_with(self, other: PackedClause) -> bool {
        (self.pos & other.neg) | (self.neg & other.pos) != 0
    }

    pub fn is_subset_of(self, other: PackedClause) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }
}
