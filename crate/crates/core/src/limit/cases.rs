//! Curve tables for the six sign cases.
//!
//! Each entry lists the segment kinds of one curve together with the tabulated end time
//! of every segment but the last. Where the tabulated time conflicts with continuity the
//! table keeps the tabulated value so the discrepancy is reported; the curve itself always
//! uses the recomputed junction.

use super::curve::{CurveName, SegmentKind};
use super::{CaseTag, MajorCase, Subcase};
use crate::viscous::DeltaRiemannData;

pub(crate) struct CurveTable {
    pub name: CurveName,
    pub kinds: Vec<SegmentKind>,
    pub printed: Vec<f64>,
}

/// Rarefaction fan `u = (x - center)/t` between two named boundaries.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Fan {
    pub center: f64,
    pub left: CurveName,
    pub right: CurveName,
}

pub(crate) struct CaseLayout {
    pub curves: Vec<CurveTable>,
    pub fans: Vec<Fan>,
    /// Left-to-right order the curves keep for all `t > 0`.
    pub ordering: Vec<CurveName>,
}

fn table(name: CurveName, kinds: Vec<SegmentKind>, printed: Vec<f64>) -> CurveTable {
    CurveTable {
        name,
        kinds,
        printed,
    }
}

pub(crate) fn layout(data: &DeltaRiemannData, tag: CaseTag) -> CaseLayout {
    use CurveName::*;
    use SegmentKind::*;
    let (a, b, c, d) = (data.a(), data.b(), data.c(), data.d());
    let (ua, ub) = (data.u_a(), data.u_b());
    let l = b - a;
    let mid = 0.5 * (a + b);
    let s = ua + ub;
    let p = -s;
    let l2 = l * l;
    let sub = tag.subcase;

    match tag.major {
        MajorCase::Case1 => CaseLayout {
            curves: vec![
                table(GammaA, vec![SqrtLeft { x0: a, k: -ua }], vec![]),
                table(GammaB, vec![SqrtRight { x0: b, k: ub }], vec![]),
                table(GammaC, vec![Constant { x0: c }], vec![]),
                table(
                    GammaD,
                    vec![Constant { x0: d }, SqrtRight { x0: b, k: ub }],
                    vec![(d - b).powi(2) / (2.0 * ub)],
                ),
            ],
            fans: vec![
                Fan {
                    center: a,
                    left: GammaA,
                    right: NodeA,
                },
                Fan {
                    center: b,
                    left: NodeB,
                    right: GammaB,
                },
            ],
            ordering: vec![GammaA, NodeA, GammaC, NodeB, GammaB, GammaD],
        },
        MajorCase::Case2 => {
            let k2 = (s.sqrt() - ub.sqrt()).powi(2);
            let t_star = l2 / (2.0 * k2);
            let line = Line { mid, slope: ua / l };
            let front = SqrtRight { x0: a, k: s };
            let t_line = l2 / (2.0 * ua);
            let printed_da = (d - a).powi(2) / (2.0 * k2);
            let gamma_d = match sub {
                Some(Subcase::Below) => table(
                    GammaD,
                    vec![Constant { x0: d }, SqrtRight { x0: b, k: ub }, front],
                    vec![(d - b).powi(2) / (2.0 * ub), t_star],
                ),
                Some(Subcase::At) => table(GammaD, vec![Constant { x0: d }, front], vec![t_star]),
                _ => table(
                    GammaD,
                    vec![Constant { x0: d }, front],
                    vec![(d - b).powi(2) / (2.0 * ub)],
                ),
            };
            CaseLayout {
                curves: vec![
                    table(
                        GammaA,
                        vec![SqrtRight { x0: a, k: ua }, line, front],
                        vec![t_line, printed_da],
                    ),
                    table(
                        GammaB1,
                        vec![Constant { x0: b }, line, front],
                        vec![t_line, t_star],
                    ),
                    table(
                        GammaB2,
                        vec![SqrtRight { x0: b, k: ub }, front],
                        vec![t_star],
                    ),
                    table(
                        GammaC,
                        vec![Constant { x0: c }, SqrtRight { x0: a, k: ua }, line, front],
                        vec![(c - a).powi(2) / (2.0 * ua), t_line, printed_da],
                    ),
                    gamma_d,
                ],
                fans: vec![
                    Fan {
                        center: a,
                        left: NodeA,
                        right: GammaA,
                    },
                    Fan {
                        center: b,
                        left: GammaB1,
                        right: GammaB2,
                    },
                ],
                ordering: vec![NodeA, GammaA, GammaC, GammaB1, GammaB2, GammaD],
            }
        }
        MajorCase::Case3 | MajorCase::Case4 => {
            let k3 = (ua.sqrt() + (-ub).sqrt()).powi(2);
            let t_star = l2 / (2.0 * k3);
            let line = Line { mid, slope: s / l };
            let case3 = tag.major == MajorCase::Case3;
            let (last, t_last) = if case3 {
                (SqrtRight { x0: a, k: s }, l2 / (2.0 * s))
            } else {
                (SqrtLeft { x0: b, k: p }, l2 / (2.0 * p))
            };
            let gamma_c = match sub {
                Some(Subcase::Below) => table(
                    GammaC,
                    vec![Constant { x0: c }, SqrtRight { x0: a, k: ua }, line, last],
                    vec![(c - a).powi(2) / (2.0 * ua), t_star, t_last],
                ),
                Some(Subcase::At) => table(
                    GammaC,
                    vec![Constant { x0: c }, line, last],
                    vec![t_star, t_last],
                ),
                _ => table(
                    GammaC,
                    vec![Constant { x0: c }, SqrtLeft { x0: b, k: -ub }, line, last],
                    vec![(b - c).powi(2) / (-2.0 * ub), t_star, t_last],
                ),
            };
            let rising = table(
                if case3 { GammaA } else { GammaA2 },
                vec![SqrtRight { x0: a, k: ua }, line, last],
                vec![t_star, t_last],
            );
            let falling = table(
                if case3 { GammaB1 } else { GammaB },
                vec![SqrtLeft { x0: b, k: -ub }, line, last],
                vec![t_star, t_last],
            );
            if case3 {
                CaseLayout {
                    curves: vec![
                        rising,
                        falling,
                        table(GammaB2, vec![Constant { x0: b }, last], vec![t_last]),
                        gamma_c,
                        table(
                            GammaD,
                            vec![Constant { x0: d }, last],
                            vec![(d - a).powi(2) / (2.0 * s)],
                        ),
                    ],
                    fans: vec![
                        Fan {
                            center: a,
                            left: NodeA,
                            right: GammaA,
                        },
                        Fan {
                            center: b,
                            left: GammaB1,
                            right: GammaB2,
                        },
                    ],
                    ordering: vec![NodeA, GammaA, GammaC, GammaB1, GammaB2, GammaD],
                }
            } else {
                CaseLayout {
                    curves: vec![
                        table(GammaA1, vec![Constant { x0: a }, last], vec![t_last]),
                        rising,
                        falling,
                        gamma_c,
                        table(GammaD, vec![Constant { x0: d }], vec![]),
                    ],
                    fans: vec![
                        Fan {
                            center: a,
                            left: GammaA1,
                            right: GammaA2,
                        },
                        Fan {
                            center: b,
                            left: GammaB,
                            right: NodeB,
                        },
                    ],
                    ordering: vec![GammaA1, GammaA2, GammaC, GammaB, NodeB, GammaD],
                }
            }
        }
        MajorCase::Case5 => {
            let k3 = (ua.sqrt() + (-ub).sqrt()).powi(2);
            let t_star = l2 / (2.0 * k3);
            let wall = Constant { x0: mid };
            let gamma_c = match sub {
                Some(Subcase::Below) => table(
                    GammaC,
                    vec![Constant { x0: c }, SqrtRight { x0: a, k: ua }, wall],
                    vec![(c - a).powi(2) / (2.0 * ua), t_star],
                ),
                Some(Subcase::At) => table(GammaC, vec![wall], vec![]),
                _ => table(
                    GammaC,
                    vec![Constant { x0: c }, SqrtLeft { x0: b, k: -ub }, wall],
                    vec![(b - c).powi(2) / (-2.0 * ub), t_star],
                ),
            };
            CaseLayout {
                curves: vec![
                    table(GammaA, vec![SqrtRight { x0: a, k: ua }, wall], vec![t_star]),
                    table(GammaB, vec![SqrtLeft { x0: b, k: -ub }, wall], vec![t_star]),
                    gamma_c,
                    table(GammaD, vec![Constant { x0: d }], vec![]),
                ],
                fans: vec![
                    Fan {
                        center: a,
                        left: NodeA,
                        right: GammaA,
                    },
                    Fan {
                        center: b,
                        left: GammaB,
                        right: NodeB,
                    },
                ],
                ordering: vec![NodeA, GammaA, GammaC, GammaB, NodeB, GammaD],
            }
        }
        MajorCase::Case6 => {
            let k6 = (p.sqrt() - (-ua).sqrt()).powi(2);
            let t_a1 = l2 / (2.0 * k6);
            let t_line = l2 / (-2.0 * ub);
            let line = Line { mid, slope: ub / l };
            let last = SqrtLeft { x0: b, k: p };
            CaseLayout {
                curves: vec![
                    table(GammaA1, vec![SqrtLeft { x0: a, k: -ua }, last], vec![t_a1]),
                    table(
                        GammaA2,
                        vec![Constant { x0: a }, line, last],
                        vec![t_line, t_a1],
                    ),
                    table(
                        GammaB,
                        vec![SqrtLeft { x0: b, k: -ub }, line, last],
                        vec![t_line, t_a1],
                    ),
                    table(
                        GammaC,
                        vec![Constant { x0: c }, SqrtLeft { x0: b, k: -ub }, line, last],
                        vec![(b - c).powi(2) / (-2.0 * ub), t_line, t_a1],
                    ),
                    table(GammaD, vec![Constant { x0: d }], vec![]),
                ],
                fans: vec![
                    Fan {
                        center: a,
                        left: GammaA1,
                        right: GammaA2,
                    },
                    Fan {
                        center: b,
                        left: GammaB,
                        right: NodeB,
                    },
                ],
                ordering: vec![GammaA1, GammaA2, GammaC, GammaB, NodeB, GammaD],
            }
        }
    }
}
