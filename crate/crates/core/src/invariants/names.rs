use std::fmt;
use std::str::FromStr;

use crate::word::BinaryWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classical {
    D,
    C,
    Dc,
    E,
    De,
    S,
    L,
    W,
    Nw,
    Chi,
    Ld,
    Hl,
    Hd,
    Hs,
}

impl Classical {
    pub const ALL: [Classical; 14] = [
        Classical::D,
        Classical::C,
        Classical::Dc,
        Classical::E,
        Classical::De,
        Classical::S,
        Classical::L,
        Classical::W,
        Classical::Nw,
        Classical::Chi,
        Classical::Ld,
        Classical::Hl,
        Classical::Hd,
        Classical::Hs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Classical::D => "d",
            Classical::C => "c",
            Classical::Dc => "dc",
            Classical::E => "e",
            Classical::De => "de",
            Classical::S => "s",
            Classical::L => "l",
            Classical::W => "w",
            Classical::Nw => "nw",
            Classical::Chi => "chi",
            Classical::Ld => "ld",
            Classical::Hl => "hl",
            Classical::Hd => "hd",
            Classical::Hs => "hs",
        }
    }

    pub fn is_hereditary(self) -> bool {
        matches!(self, Classical::Hl | Classical::Hd | Classical::Hs)
    }
}

/// Boundedness numbers of a filter with minimal entourage `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerbalKind {
    /// `ℓ`: fewest centres whose `W`-balls cover.
    Ell,
    /// `L = ℓ + 1`.
    Sharp,
    /// `ℓ̄`: fewest centres whose `W`-balls are dense.
    EllBar,
    /// `L̄ = ℓ̄ + 1`.
    SharpBar,
}

impl VerbalKind {
    pub fn is_dense(self) -> bool {
        matches!(self, VerbalKind::EllBar | VerbalKind::SharpBar)
    }

    pub fn is_sharp(self) -> bool {
        matches!(self, VerbalKind::Sharp | VerbalKind::SharpBar)
    }

    fn prefix(self) -> &'static str {
        match self {
            VerbalKind::Ell => "ell",
            VerbalKind::Sharp => "L",
            VerbalKind::EllBar => "ellbar",
            VerbalKind::SharpBar => "Lbar",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    /// `U^{±n} ∪ U^{∓n}`.
    Wedge,
    /// `U^{±n} ∩ U^{∓n}`.
    Vee,
}

/// Index of a star invariant: `n` or `n + ½`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarIndex(pub usize);

impl StarIndex {
    pub fn whole(n: usize) -> Self {
        StarIndex(2 * n)
    }

    pub fn half(n: usize) -> Self {
        StarIndex(2 * n + 1)
    }

    pub fn depth(self) -> usize {
        self.0 / 2
    }

    pub fn is_half(self) -> bool {
        self.0 % 2 == 1
    }
}

impl fmt::Display for StarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_half() {
            write!(f, "{}.5", self.depth())
        } else {
            write!(f, "{}", self.depth())
        }
    }
}

impl FromStr for StarIndex {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s.split_once('.') {
            None => s.parse().map(StarIndex::whole).map_err(|_| ()),
            Some((n, "5")) => n.parse().map(StarIndex::half).map_err(|_| ()),
            Some((n, "0")) => n.parse().map(StarIndex::whole).map_err(|_| ()),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    Classical(Classical),
    Verbal {
        kind: VerbalKind,
        word: BinaryWord,
        quasi: bool,
    },
    Lattice {
        kind: LatticeKind,
        n: usize,
        quasi: bool,
    },
    UEll,
    USharp,
    EllOmega,
    Star {
        bar: bool,
        sharp: bool,
        index: StarIndex,
    },
    StarOmega {
        bar: bool,
    },
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = |quasi: bool| if quasi { "q" } else { "" };
        match self {
            Invariant::Classical(c) => write!(f, "{}", c.name()),
            Invariant::Verbal { kind, word, quasi } => {
                write!(f, "{}{}[{}]", q(*quasi), kind.prefix(), word)
            }
            Invariant::Lattice { kind, n, quasi } => {
                let k = match kind {
                    LatticeKind::Wedge => "wedge",
                    LatticeKind::Vee => "vee",
                };
                write!(f, "{}{k}[{n}]", q(*quasi))
            }
            Invariant::UEll => write!(f, "u_ell"),
            Invariant::USharp => write!(f, "u_L"),
            Invariant::EllOmega => write!(f, "ell_omega"),
            Invariant::Star { bar, sharp, index } => {
                let b = if *bar { "b" } else { "" };
                let l = if *sharp { "L" } else { "l" };
                write!(f, "{b}{l}star[{index}]")
            }
            Invariant::StarOmega { bar } => {
                write!(f, "{}lstar[omega]", if *bar { "b" } else { "" })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown invariant name {0:?}")]
pub struct UnknownInvariant(pub String);

impl FromStr for Invariant {
    type Err = UnknownInvariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || UnknownInvariant(s.to_string());
        let s = s.trim();
        if let Some(c) = Classical::ALL.iter().find(|c| c.name() == s) {
            return Ok(Invariant::Classical(*c));
        }
        match s {
            "u_ell" => return Ok(Invariant::UEll),
            "u_L" => return Ok(Invariant::USharp),
            "ell_omega" => return Ok(Invariant::EllOmega),
            "lstar[omega]" => return Ok(Invariant::StarOmega { bar: false }),
            "blstar[omega]" => return Ok(Invariant::StarOmega { bar: true }),
            _ => {}
        }
        let (head, arg) = s
            .strip_suffix(']')
            .and_then(|t| t.split_once('['))
            .ok_or_else(err)?;
        let (quasi, base) = match head.strip_prefix('q') {
            Some(rest) => (true, rest),
            None => (false, head),
        };
        let verbal = |kind| -> Result<Invariant, UnknownInvariant> {
            let word = arg.parse::<BinaryWord>().map_err(|_| err())?;
            Ok(Invariant::Verbal { kind, word, quasi })
        };
        let lattice = |kind| -> Result<Invariant, UnknownInvariant> {
            let n = arg.parse::<usize>().map_err(|_| err())?;
            Ok(Invariant::Lattice { kind, n, quasi })
        };
        match base {
            "ell" => return verbal(VerbalKind::Ell),
            "L" => return verbal(VerbalKind::Sharp),
            "ellbar" => return verbal(VerbalKind::EllBar),
            "Lbar" => return verbal(VerbalKind::SharpBar),
            "wedge" => return lattice(LatticeKind::Wedge),
            "vee" => return lattice(LatticeKind::Vee),
            _ => {}
        }
        let (bar, sharp) = match head {
            "lstar" => (false, false),
            "Lstar" => (false, true),
            "blstar" => (true, false),
            "bLstar" => (true, true),
            _ => return Err(err()),
        };
        let index = arg.parse::<StarIndex>().map_err(|_| err())?;
        Ok(Invariant::Star { bar, sharp, index })
    }
}
