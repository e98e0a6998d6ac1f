use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use delannoy_core::identities::{
    verify_h_pairing, verify_lemma_2_4, verify_lemma_2_5, verify_lemma_2_6, verify_lemma_3_4, verify_lemma_3_5, verify_lemma_3_6,
    verify_lemma_3_7, verify_pfaff_saalschutz, verify_quotients, verify_summed, verify_telescope, CheckResult, IdentityError,
    QuotientKind,
};
use delannoy_core::{CoeffTable, Sign};

use crate::span::Span;
use crate::EpsChoice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaId {
    Telescope,
    Summed,
    #[value(name = "2.4")]
    BinomialRatio,
    #[value(name = "2.5")]
    CParity,
    #[value(name = "2.6")]
    BParity,
    Pfaff,
    #[value(name = "3.4")]
    WParity,
    #[value(name = "3.5")]
    ADiagonal,
    #[value(name = "3.6")]
    ATildeOdd,
    #[value(name = "3.7")]
    ATildeEven,
    Quotients,
    HPairing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindChoice {
    All,
    F,
    Gplus,
    Gminus,
}

/// Parameter ranges; unset ones fall back to the per-lemma defaults.
#[derive(Debug, Clone, Args)]
pub struct LemmaArgs {
    #[arg(long)]
    pub id: LemmaId,
    #[arg(long, value_enum, default_value = "both")]
    pub eps: EpsChoice,
    #[arg(long)]
    pub l: Option<Span>,
    #[arg(long)]
    pub u: Option<Span>,
    #[arg(long)]
    pub n: Option<Span>,
    #[arg(long)]
    pub a: Option<Span>,
    #[arg(long)]
    pub b: Option<Span>,
    #[arg(long)]
    pub h: Option<Span>,
    #[arg(long)]
    pub e: Option<Span>,
    #[arg(long)]
    pub x: Option<Span>,
    #[arg(long)]
    pub y: Option<Span>,
    #[arg(long = "J")]
    pub j: Option<Span>,
    #[arg(long = "M")]
    pub big_m: Option<Span>,
    #[arg(long = "I")]
    pub total: Option<Span>,
    /// Upper end of the k (telescope) or n (summed) range
    #[arg(long, default_value_t = 40)]
    pub max: u32,
    #[arg(long, value_enum, default_value = "all", ignore_case = true)]
    pub kind: KindChoice,
}

pub type Job = Box<dyn Fn(&CoeffTable) -> Result<CheckResult, IdentityError> + Send + Sync>;

fn or(span: Option<Span>, lo: u32, hi: u32) -> Span {
    span.unwrap_or(Span::new(lo, hi))
}

/// Expands the arguments into independent checks, in canonical order.
pub fn jobs(args: &LemmaArgs) -> Result<Vec<Job>> {
    let mut out: Vec<Job> = Vec::new();
    let signs = args.eps.signs();
    let max = args.max;
    match args.id {
        LemmaId::Telescope | LemmaId::Summed => {
            let summed = args.id == LemmaId::Summed;
            for &s in &signs {
                for l in or(args.l, 0, 8).iter() {
                    for u in or(args.u, 0, 8).iter() {
                        out.push(Box::new(move |_| Ok(if summed { verify_summed(s, l, u, max) } else { verify_telescope(s, l, u, max) })));
                    }
                }
            }
        }
        LemmaId::BinomialRatio => {
            for n in or(args.n, 1, 30).iter() {
                for l in or(args.l, 1, 30).iter() {
                    out.push(Box::new(move |_| verify_lemma_2_4(n, l)));
                }
            }
        }
        LemmaId::CParity => {
            for l in or(args.l, 1, 12).iter() {
                for a in or(args.a, 1, 4).iter() {
                    out.push(Box::new(move |t| verify_lemma_2_5(t, l, a)));
                }
            }
        }
        LemmaId::BParity => {
            for mm in or(args.big_m, 1, 2).iter() {
                for n in or(args.n, 1, 6).iter() {
                    let top = 2 * mm * n;
                    for i in or(args.total, 0, top).clip(0, top) {
                        for l in or(args.l, 1, top).iter() {
                            out.push(Box::new(move |t| verify_lemma_2_6(t, mm, n, i, l)));
                        }
                    }
                }
            }
        }
        LemmaId::Pfaff => {
            for x in or(args.x, 0, 8).iter() {
                for y in or(args.y, 0, 8).iter() {
                    for a in or(args.a, 0, 6).iter() {
                        for b in or(args.b, 0, 6).iter() {
                            out.push(Box::new(move |_| Ok(verify_pfaff_saalschutz(x, y, a, b))));
                        }
                    }
                }
            }
        }
        LemmaId::WParity => {
            for n in or(args.n, 1, 40).iter() {
                for b in or(args.b, 0, 20).iter() {
                    out.push(Box::new(move |_| verify_lemma_3_4(n, b)));
                }
            }
        }
        LemmaId::ADiagonal => {
            for j in or(args.j, 1, 64).iter() {
                out.push(Box::new(move |_| verify_lemma_3_5(j)));
            }
        }
        LemmaId::ATildeOdd | LemmaId::ATildeEven => {
            let odd = args.id == LemmaId::ATildeOdd;
            for mm in or(args.big_m, 1, 2).iter() {
                for n in or(args.n, 1, 4).iter() {
                    for h in or(args.h, 1, 2).iter() {
                        let top = 2 * mm * n;
                        for i in or(args.total, 0, top).clip(0, top).filter(|i| (i % 2 == 1) == odd) {
                            if odd {
                                for l in or(args.l, 0, h * i).iter() {
                                    out.push(Box::new(move |t| verify_lemma_3_6(t, mm, n, i, l, h)));
                                }
                            } else {
                                for e in or(args.e, 0, h * i + 2).iter().filter(|e| e % 2 == 0) {
                                    out.push(Box::new(move |t| verify_lemma_3_7(t, mm, n, i, e, h)));
                                }
                            }
                        }
                    }
                }
            }
        }
        LemmaId::Quotients => {
            let kinds: &[QuotientKind] = match args.kind {
                KindChoice::All => &[QuotientKind::F, QuotientKind::Gplus, QuotientKind::Gminus],
                KindChoice::F => &[QuotientKind::F],
                KindChoice::Gplus => &[QuotientKind::Gplus],
                KindChoice::Gminus => &[QuotientKind::Gminus],
            };
            for &kind in kinds {
                for n in or(args.n, 1, 15).iter() {
                    for l in or(args.l, 1, 10).iter() {
                        for a in or(args.a, 1, 3).iter() {
                            for u in or(args.u, 0, a).clip(0, a) {
                                out.push(Box::new(move |t| verify_quotients(t, kind, l, a, u, n)));
                            }
                        }
                    }
                }
            }
        }
        LemmaId::HPairing => {
            for n in or(args.n, 1, 15).iter() {
                for l in or(args.l, 1, 10).iter() {
                    out.push(Box::new(move |t| verify_h_pairing(t, l, n)));
                }
            }
        }
    }
    if out.is_empty() {
        let name = args.id.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        bail!("the given ranges select no checks for lemma {name}");
    }
    Ok(out)
}

impl EpsChoice {
    pub fn signs(self) -> Vec<Sign> {
        match self {
            EpsChoice::Both => vec![Sign::Plus, Sign::Minus],
            EpsChoice::Plus => vec![Sign::Plus],
            EpsChoice::Minus => vec![Sign::Minus],
        }
    }
}
