//! Curvature coefficients of an embedded Levi-nondegenerate 3-fold as
//! functions of the jet of the second fundamental form.
//!
//! Each coefficient vector is a sum of blocks `scale * M * v`, kept as text
//! so single entries can be perturbed.

use std::collections::BTreeMap;

use crate::exterior::{Form, FormParser};

use super::jet::parser;
use super::LnError;

/// One summand `scale * rows * vec`; with `re` its real part `(x + conj(x))/2`.
#[derive(Clone, Copy, Debug)]
pub struct Block {
    pub scale: &'static str,
    pub rows: &'static [&'static [&'static str]],
    pub vec: &'static [&'static str],
    pub re: bool,
}

const fn blk(scale: &'static str, rows: &'static [&'static [&'static str]], vec: &'static [&'static str]) -> Block {
    Block { scale, rows, vec, re: false }
}

const fn re(scale: &'static str, rows: &'static [&'static [&'static str]], vec: &'static [&'static str]) -> Block {
    Block { scale, rows, vec, re: true }
}

/// A named family of coefficients sharing one block list.
#[derive(Clone, Copy, Debug)]
pub struct Evaluator {
    pub name: &'static str,
    pub outputs: &'static [&'static str],
    pub blocks: &'static [Block],
}

const V1: [&str; 3] = ["v1bar", "8i*u1bar", "-12abar"];
const V2: [&str; 3] = ["-4i*v2bar", "24u2bar", "24i*bbar"];

pub const SPR: Evaluator = Evaluator {
    name: "SPR",
    outputs: &["S", "P", "R"],
    blocks: &[
        blk("eps/6", &[&["a", "b", "c"], &["u1", "u2", "u3"], &["v1", "v2", "v3"]], &V1),
        blk("eps/6", &[&["0", "0", "0"], &["a", "b", "c"], &["2u1", "2u2", "2u3"]], &V2),
        blk("eps/6", &[&["0", "0", "0"], &["0", "0", "0"], &["a", "b", "c"]], &["-12v3bar", "-48i*u3bar", "24cbar"]),
        blk(
            "-1/6",
            &[&["0", "0", "0"], &["0", "30b", "0"], &["30a*abar", "54u2", "36u1"]],
            &["-eps*a**2*abar**2", "i*abar**2*a", "i*abar**2*b"],
        ),
        blk("1/12", &[&["0", "0"], &["-20abar", "0"], &["72i*bbar", "108i*abar"]], &["a**2*u1bar", "a**2*u2bar"]),
        blk("-1", &[&["0", "0"], &["0", "0"], &["36b", "5u1"]], &["a*abar*bbar", "a*abar*u1bar"]),
    ],
};

const W1: [&str; 3] = ["w1bar", "10i*v1bar", "-20u1bar"];
const W2: [&str; 3] = ["w2bar", "8i*v2bar", "-12u2bar"];
const W3: [&str; 3] = ["-4i*w3bar", "24v3bar", "24i*u3bar"];

pub const QUVWR: Evaluator = Evaluator {
    name: "QUVWR",
    outputs: &["Q", "U", "V", "W", "R1p"],
    blocks: &[
        blk(
            "eps/6",
            &[&["a", "b", "c"], &["0", "0", "0"], &["u1", "u2", "u3"], &["0", "0", "0"], &["v1", "v2", "v3"]],
            &W1,
        ),
        blk(
            "-eps/6",
            &[
                &["0", "0", "0"],
                &["-a", "-b", "-c"],
                &["4i*a", "4i*b", "4i*c"],
                &["-u1", "-u2", "-u3"],
                &["8i*u1", "8i*u2", "8i*u3"],
            ],
            &W2,
        ),
        blk(
            "-eps/6",
            &[&["0", "0", "0"], &["0", "0", "0"], &["0", "0", "0"], &["-a", "-b", "-c"], &["3i*a", "3i*b", "3i*c"]],
            &W3,
        ),
        blk(
            "eps/6",
            &[
                &["0", "0", "0", "0", "0", "0"],
                &["u2", "u3", "u4", "0", "0", "0"],
                &["i*u2", "i*u3", "i*u4", "0", "0", "0"],
                &["v2", "v3", "v4", "u2", "u3", "u4"],
                &["2i*v2", "2i*v3", "2i*v4", "2i*u2", "2i*u3", "2i*u4"],
            ],
            &["v1bar", "8i*u1bar", "-12abar", "-4i*v2bar", "24u2bar", "24i*bbar"],
        ),
        blk(
            "-1/6",
            &[
                &["0", "0", "0", "0"],
                &["0", "0", "24b", "0"],
                &["0", "45i*c", "84i*b", "0"],
                &["1/2*(45abar*b + 5i*a*u1bar)", "27u3", "54u2", "4u1"],
                &["450i*abar*b + 180a*u1bar", "144i*u3", "288i*u2", "48i*u1"],
            ],
            &["-eps*a**2*abar**2", "i*abar**2*a", "i*abar**2*b", "i*abar**2*c"],
        ),
        blk(
            "-1/12",
            &[
                &["0", "0", "0"],
                &["0", "i*abar", "0"],
                &["20u1bar", "53/2*abar", "0"],
                &["20u2bar", "8bbar", "22abar"],
                &["-180i*u2bar", "-84i*bbar", "-156i*abar"],
            ],
            &["a**2*u1bar", "a**2*v1bar", "a**2*v2bar"],
        ),
        blk(
            "-1/3",
            &[
                &["0", "0", "0", "0", "0", "0", "0", "0"],
                &["0", "3b", "0", "0", "0", "0", "0", "0"],
                &["0", "63i*b", "0", "0", "0", "0", "0", "0"],
                &["-3c", "9u2", "21i*b", "5/24*i*u1", "24abar", "8i*a", "0", "13/3*abar"],
                &["144i*c", "123i*u2", "288b", "20u1", "288i*abar", "204a", "15u1bar", "82i*abar"],
            ],
            &[
                "a*abar*bbar",
                "a*abar*u1bar",
                "a*abar*u2bar",
                "a*abar*v1bar",
                "b*bbar*b",
                "b*bbar*u1bar",
                "u1*u1bar*a",
                "u1*u1bar*b",
            ],
        ),
    ],
};

pub const RRZERO: Evaluator = Evaluator {
    name: "RRzero",
    outputs: &["R0p", "R0pp"],
    blocks: &[
        blk("eps", &[&["-2a", "-2b", "-2c"], &["5i*a", "5i*b", "5i*c"]], &["w4bar", "4i*v4bar", "-2u4bar"]),
        blk("-eps/3", &[&["-u1", "-u2", "-u3"], &["5i*u1", "5i*u2", "5i*u3"]], &W3),
        blk("-eps/12", &[&["-2v1", "-2v2", "-2v3"], &["25i*v1", "25i*v2", "25i*v3"]], &W2),
        blk("-eps", &[&["2u2", "2u3", "2u4"], &["5i*u2", "5i*u3", "5i*u4"]], &["v3bar", "4i*u3bar", "-2cbar"]),
        blk("eps/6", &[&["2v2", "2v3", "2v4"], &["5i*v2", "5i*v3", "5i*v4"]], &V2),
        blk("eps/12", &[&["2w2", "2w3", "2w4"], &["5i*w2", "5i*w3", "5i*w4"]], &V1),
        blk("eps/6", &[&["0", "0", "0"], &["w1", "w2", "w3"]], &W1),
        blk("eps/6*a**2*abar**2", &[&["0"], &["6210b*bbar + 2195/2*u1*u1bar"]], &["1"]),
        blk("-a*abar/6", &[&["0"], &["1035/2*a**3*abar**3 + 342c*cbar + 1710u2*u2bar + 217/4*v1*v1bar"]], &["1"]),
        re("eps*abar**3*a/3", &[&["90", "90"], &["2385/2*i", "1650i"]], &["a*u2", "b*u1"]),
        re(
            "abar**2/3",
            &[&["-54i", "-60i", "-6i", "-36i", "-54i"], &["270", "390", "51", "210", "315"]],
            &["a*v3", "b*v2", "c*v1", "u1*u3", "u2**2"],
        ),
        re("a*abar/3", &[&["-180", "-30"], &["1350i", "375i"]], &["b*u3bar", "u1*v2bar"]),
        re(
            "-1/3",
            &[
                &["(288b*bbar + 30u1*u1bar)*a*u2bar + a*(bbar*(10u1*v1bar - 24i*u1bar*u2) + 36b*cbar*u1bar)"],
                &["(720b*cbar + 199i*u1bar*v1)*abar*b - i*(2880b*bbar + 425u1*u1bar)*a*u2bar \
                   + 40(30b*u2bar + u1*v1bar)*abar*u1 - 498i*a*b*cbar*u1bar"],
            ],
            &["1"],
        ),
        blk("-1/6", &[&["0"], &["30u1**2*u1bar**2 + 1440b**2*bbar**2 + 832b*bbar*u1*u1bar"]], &["1"]),
    ],
};

pub const QUUV: Evaluator = Evaluator {
    name: "QUUV",
    outputs: &["Qp", "U1p", "U2p", "Vp"],
    blocks: &[
        blk(
            "eps/6",
            &[&["a", "b", "c"], &["0", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]],
            &["z1bar", "12i*w1bar", "-30v1bar"],
        ),
        blk(
            "eps/6",
            &[&["0", "0", "0"], &["a", "b", "c"], &["0", "0", "0"], &["u1", "u2", "u3"]],
            &["z2bar", "10i*w2bar", "-20v2bar"],
        ),
        blk(
            "eps/6",
            &[&["0", "0", "0"], &["0", "0", "0"], &["a", "b", "c"], &["-4i*a", "-4i*b", "-4i*c"]],
            &["z3bar", "8i*w3bar", "-12v3bar"],
        ),
        blk("eps/6", &[&["0", "0", "0"], &["u2", "u3", "u4"], &["0", "0", "0"], &["v2", "v3", "v4"]], &W1),
        blk(
            "eps/6",
            &[&["0", "0", "0"], &["0", "0", "0"], &["2u2", "2u3", "2u4"], &["-3i*u2", "-3i*u3", "-3i*u4"]],
            &W2,
        ),
        blk("eps/6", &[&["0", "0", "0"], &["0", "0", "0"], &["v3", "v4", "v5"], &["i*v3", "i*v4", "i*v5"]], &V1),
        blk(
            "eps*a*abar/36",
            &[
                &["0", "0", "0", "0", "0"],
                &["0", "0", "0", "0", "0"],
                &["216", "144", "-150i", "-15", "-10"],
                &["1296i", "603/2*i", "390", "345/8*i", "70i"],
            ],
            &["abar**2*b**2", "a*abar*abar*c", "a*abar*b*u1bar", "a*abar*a*v1bar", "a**2*u1bar**2"],
        ),
        blk(
            "-a*abar/36",
            &[
                &["0", "0", "0", "0", "0", "0"],
                &["30i*c", "0", "15b", "0", "9i/2*a", "0"],
                &["24u3", "-144i*c", "-9i*u2", "48b", "-u1", "6i*a"],
                &["624i*u3", "-306c", "243/2*u2", "708i*b", "4i*u1", "183/2*a"],
            ],
            &["u1bar", "u2bar", "v1bar", "v2bar", "w1bar", "w2bar"],
        ),
        blk(
            "-1/36",
            &[&["0", "0", "0"], &["0", "-360c", "0"], &["-36i*u4", "504i*u3", "252i*u2"], &["-234u4", "-1224u3", "-612u2"]],
            &["abar**2*a", "abar**2*b", "abar**2*c"],
        ),
        blk(
            "-1/36",
            &[
                &["0", "0", "0"],
                &["5i*v1bar", "0", "0"],
                &["4i*v2bar", "21i*u2bar", "6i*bbar"],
                &["136v2bar", "84u2bar", "24bbar"],
            ],
            &["a**2*u1bar", "a**2*v1bar", "a**2*w1bar"],
        ),
        blk(
            "-1/36",
            &[
                &["0", "0", "0", "0"],
                &["20b", "0", "360i*abar", "0"],
                &["-8i*u2", "-32i*u1", "-288i*bbar", "432i*abar"],
                &["88u2", "52u1", "288bbar", "-432abar"],
            ],
            &["a*u1bar**2", "b*u1bar**2", "b**2*u1bar", "b**2*u2bar"],
        ),
        blk(
            "-1/36",
            &[
                &["0", "0", "0", "0"],
                &["0", "0", "0", "0"],
                &["-84v1bar", "288c", "-5v1bar", "68c"],
                &["156i*v1bar", "1008i*c", "5i*v1bar", "148i*c"],
            ],
            &["a*b*bbar", "abar*b*bbar", "a*u1*u1bar", "abar*u1*u1bar"],
        ),
        blk(
            "1/9",
            &[
                &["0"],
                &["0"],
                &["6i*a*bbar*c*u1bar + 4i*abar*b*u1*v1bar - 72abar*b*u1bar*u2 + 18a*b*u1bar*u2bar"],
                &["24a*bbar*c*u1bar - 14abar*b*u1*v1bar - 297i*abar*b*u1bar*u2 - 162i*a*b*u1bar*u2bar"],
            ],
            &["1"],
        ),
    ],
};

const WR_V6: [&str; 6] = ["a*v2bar", "b*u2bar", "c*bbar", "u1*v1bar", "u2*u1bar", "u3*abar"];
const WR_V6B: [&str; 6] = ["a**3*abar**3", "c*cbar", "u2*u2bar", "v1*v1bar", "b*u3bar", "v2*u1bar"];
const WR_V5: [&str; 5] = ["b*v2bar", "c*u2bar", "u1*w1bar", "u2*v1bar", "u3*u1bar"];

pub const WR: Evaluator = Evaluator {
    name: "WR",
    outputs: &["Wp", "R1pp"],
    blocks: &[
        blk("-4eps/6", &[&["i*a", "i*b", "i*c"], &["3a", "3b", "3c"]], &["z4bar", "6i*w4bar", "-6v4bar"]),
        blk("-eps/6", &[&["-u1", "-u2", "-u3"], &["8i*u1", "8i*u2", "8i*u3"]], &["z3bar", "8i*w3bar", "-12v3bar"]),
        blk("eps/6", &[&["0", "0", "0"], &["v1", "v2", "v3"]], &["z2bar", "10i*w2bar", "-20v2bar"]),
        blk("-4eps/6", &[&["2i*u2", "2i*u3", "2i*u4"], &["u2", "u3", "u4"]], &["w3bar", "6i*v3bar", "-6u3bar"]),
        blk("-2eps/6", &[&["-v2", "-v3", "-v4"], &["3i*v2", "3i*v3", "3i*v4"]], &W2),
        blk("eps/6", &[&["0", "0", "0"], &["w2", "w3", "w4"]], &W1),
        blk("4eps/6", &[&["-i*v3", "-i*v4", "-i*v5"], &["2v3", "2v4", "2v5"]], &["v2bar", "6i*u2bar", "-6bbar"]),
        blk("eps/6", &[&["w3", "w4", "w5"], &["2i*w3", "2i*w4", "2i*w5"]], &V1),
        blk(
            "eps/6*abar**3*a",
            &[&["99/2*u3", "252u2", "4u1"], &["414i*u3", "1404i*u2", "228i*u1"]],
            &["a", "b", "c"],
        ),
        blk(
            "eps/6*a**3",
            &[
                &["16i*bbar*u1bar", "54i*abar*u1bar", "16i*abar*bbar", "33/2*i*abar**2"],
                &["108bbar*u1bar", "819/2*abar*u1bar", "261/2*abar*bbar", "399/2*abar**2"],
            ],
            &["u1bar", "u2bar", "v1bar", "v2bar"],
        ),
        blk(
            "eps/6*a**2*abar**2",
            &[&["15i*c", "-57i*u2", "-81b", "-125/24*u1"], &["360c", "903/2*u2", "918i*b", "10i*u1"]],
            &["bbar", "u1bar", "u2bar", "v1bar"],
        ),
        blk(
            "eps/6",
            &[
                &["-(152a*u1bar + 324i*abar*b)", "-(15a*u1bar + 224/3*i*abar*b)", "72"],
                &["1008abar*b + 546i*a*u1bar", "431abar*b + 45/2*i*a*u1bar", "384i"],
            ],
            &["a*abar*b*bbar", "a*abar*u1*u1bar", "abar**3*b**2*u1"],
        ),
        blk(
            "abar**2/6",
            &[&["-24i", "-90i", "-10i", "-4i", "-126i"], &["138", "360", "120", "48", "432"]],
            &["a*v4", "b*v3", "c*v2", "u1*u4", "u2*u3"],
        ),
        blk(
            "a**2/6",
            &[&["-12", "-12", "0", "-12", "-36", "-4"], &["81i", "66i", "6i", "96i", "168i", "42i"]],
            &["abar*w3bar", "bbar*w2bar", "cbar*w1bar", "u1bar*v3bar", "u2bar*v2bar", "u3bar*v1bar"],
        ),
        blk(
            "-a*abar/6",
            &[
                &["36i", "24", "3/2*i", "24", "54i", "-24", "0", "2/3*i", "18"],
                &["558", "198i", "42", "108i", "252", "252i", "i/4", "37", "231i"],
            ],
            &["b*v3bar", "c*u3bar", "u1*w2bar", "u2*v2bar", "u3*u2bar", "u4*bbar", "v1*w1bar", "v2*v1bar", "v3*u1bar"],
        ),
        blk(
            "-b*bbar/6",
            &[&["96i", "-144", "-144i", "-6", "-40i", "288"], &["528", "432i", "288", "8i", "480", "1296i"]],
            &WR_V6,
        ),
        blk(
            "-u1*u1bar/6",
            &[&["14/3*i", "-4/3", "0", "-5/6", "-20/3*i", "22"], &["64", "84i", "60", "0", "30", "164i"]],
            &WR_V6,
        ),
        blk(
            "-a*u1bar/6",
            &[&["-135/4", "24", "0", "-1/6", "8i", "-4/3*i"], &["60i", "48i", "90i", "i/2", "384", "26"]],
            &WR_V6B,
        ),
        blk(
            "-b*abar/6",
            &[&["-405/4*i", "120i", "36i", "-i", "72", "80/3"], &["675/2", "0", "288", "12", "504i", "260i"]],
            &WR_V6B,
        ),
        blk("-abar*u1/6", &[&["4", "16i", "-1/6", "-5i", "0"], &["108i", "48", "0", "0", "0"]], &WR_V5),
        blk("-bbar*a/6", &[&["0", "-72", "i", "4", "12i"], &["0", "216i", "10", "-12i", "276"]], &WR_V5),
        blk(
            "-1/6",
            &[
                &["i*(108b*u2bar + 25/6*u1*v1bar)*a*u2bar + 24(bbar*c + 2u2*u1bar)*abar*u2 \
                   - (10i*a*v1bar - 56b*u1bar)*b*cbar"],
                &["(60cbar*v1bar + 504u2bar**2)*a*b + (648i*bbar*c + 40u1*v1bar + 246i*u1bar*u2)*abar*u2 \
                   + 10b*v1*u1bar**2 + 72i*b**2*cbar*u1bar + 30i*abar*c*v1*u1bar + 40a*u1*u2bar*v1bar"],
            ],
            &["1"],
        ),
    ],
};

pub const EVALUATORS: [Evaluator; 5] = [SPR, QUVWR, RRZERO, QUUV, WR];

/// A single-entry perturbation: entry `(row, col)` of block `block` doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

impl Evaluator {
    /// Nonzero entries, in block order.
    pub fn entries(&self) -> Vec<Mutation> {
        let mut out = Vec::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            for (r, row) in b.rows.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if *e != "0" {
                        out.push(Mutation { block: bi, row: r, col: c });
                    }
                }
            }
        }
        out
    }

    /// Evaluates every output as a scalar form over `H^2`.
    pub fn evaluate(&self, epsilon: i64, mutation: Option<Mutation>) -> Result<BTreeMap<&'static str, Form>, LnError> {
        let p = parser(epsilon);
        self.evaluate_with(&p, mutation)
    }

    pub fn evaluate_with(&self, p: &FormParser, mutation: Option<Mutation>) -> Result<BTreeMap<&'static str, Form>, LnError> {
        let mut acc: Vec<Form> = vec![Form::zero(&p.space); self.outputs.len()];
        for (bi, b) in self.blocks.iter().enumerate() {
            if b.rows.len() != self.outputs.len() {
                return Err(LnError::Input(format!("{} block {bi} has {} rows", self.name, b.rows.len())));
            }
            let scale = p.parse(b.scale)?;
            let vec: Vec<Form> = b.vec.iter().map(|v| p.parse(v)).collect::<Result<_, _>>()?;
            for (r, row) in b.rows.iter().enumerate() {
                if row.len() != vec.len() {
                    return Err(LnError::Input(format!("{} block {bi} row {r} has wrong length", self.name)));
                }
                let mut sum = Form::zero(&p.space);
                for (c, e) in row.iter().enumerate() {
                    if *e == "0" {
                        continue;
                    }
                    let mut entry = p.parse(e)?;
                    if mutation == Some(Mutation { block: bi, row: r, col: c }) {
                        entry = entry.scale_const(&2.into());
                    }
                    sum = sum.add(&entry.wedge(&vec[c])?)?;
                }
                let mut term = scale.wedge(&sum)?;
                if b.re {
                    term = term.add(&term.conj())?.scale_const(&crate::exterior::GaussRat::ratio(1, 2));
                }
                acc[r] = acc[r].add(&term)?;
            }
        }
        Ok(self.outputs.iter().copied().zip(acc).collect())
    }
}

/// Every curvature coefficient over `H^2`.
pub fn curvature_from_jet_symbolic(epsilon: i64) -> Result<BTreeMap<&'static str, Form>, LnError> {
    let mut out = BTreeMap::new();
    for e in EVALUATORS {
        out.extend(e.evaluate(epsilon, None)?);
    }
    Ok(out)
}
