//! The three example arenas and the advisers discussed alongside them.

use crate::adviser::Adviser;
use crate::arena::{Arena, Owner};
use crate::error::{Error, Result};

pub const FIXTURE_NAMES: [&str; 3] = ["fig1", "fig2", "fig3"];

struct Layout<'a> {
    protagonist: &'a [&'a str],
    adversary: &'a [&'a str],
    unsafe_states: &'a [&'a str],
    transitions: &'a [(&'a str, &'a str, &'a str)],
}

const FIG1: Layout = Layout {
    protagonist: &["s1", "s3", "s5", "s7"],
    adversary: &["s2", "s4", "s6"],
    unsafe_states: &["s5", "s6", "s7"],
    transitions: &[
        ("s1", "u_p1", "s2"),
        ("s1", "u_p2", "s4"),
        ("s2", "u_a1", "s1"),
        ("s2", "u_a2", "s3"),
        ("s2", "u_a3", "s5"),
        ("s3", "u_p3", "s2"),
        ("s3", "u_p4", "s4"),
        ("s4", "u_a4", "s5"),
        ("s4", "u_a5", "s7"),
        ("s5", "u_p5", "s6"),
        ("s6", "u_a6", "s5"),
        ("s6", "u_a7", "s7"),
        ("s7", "u_p6", "s6"),
        ("s7", "u_p7", "s4"),
    ],
};

const FIG2: Layout = Layout {
    protagonist: &["s1", "s3", "s4", "s5"],
    adversary: &["s2", "s6", "s7"],
    unsafe_states: &["s4"],
    transitions: &[
        ("s1", "u_p1", "s2"),
        ("s2", "u_a1", "s3"),
        ("s2", "u_a2", "s4"),
        ("s2", "u_a3", "s5"),
        ("s3", "u_p2", "s6"),
        ("s4", "u_p3", "s6"),
        ("s5", "u_p4", "s7"),
        ("s6", "u_a4", "s3"),
        ("s6", "u_a5", "s4"),
        ("s7", "u_a6", "s5"),
    ],
};

const FIG3: Layout = Layout {
    protagonist: &["s1", "s3", "s4", "s5", "s9", "s10", "s12"],
    adversary: &["s2", "s6", "s7", "s8", "s11"],
    unsafe_states: &["s4", "s12"],
    transitions: &[
        ("s1", "u_p1", "s2"),
        ("s2", "u_a1", "s3"),
        ("s2", "u_a2", "s4"),
        ("s2", "u_a3", "s5"),
        ("s3", "u_p2", "s6"),
        ("s3", "u_p3", "s7"),
        ("s4", "u_p4", "s7"),
        ("s5", "u_p5", "s8"),
        ("s6", "u_a4", "s3"),
        ("s7", "u_a5", "s4"),
        ("s8", "u_a6", "s9"),
        ("s8", "u_a7", "s10"),
        ("s8", "u_a8", "s12"),
        ("s9", "u_p6", "s8"),
        ("s10", "u_p8", "s11"),
        ("s11", "u_a9", "s12"),
        ("s12", "u_p7", "s8"),
    ],
};

fn build(layout: &Layout) -> Arena {
    let mut ids: Vec<(&str, Owner)> = layout
        .protagonist
        .iter()
        .map(|s| (*s, Owner::Protagonist))
        .chain(layout.adversary.iter().map(|s| (*s, Owner::Adversary)))
        .collect();
    ids.sort_by_key(|(s, _)| s[1..].parse::<u32>().unwrap_or(u32::MAX));
    let mut b = Arena::builder().initial("s1");
    for (id, owner) in ids {
        b = b.state(id, owner, !layout.unsafe_states.contains(&id));
    }
    for (from, input, to) in layout.transitions {
        b = b.transition(*from, *input, *to);
    }
    b.build().expect("fixture is well formed")
}

pub fn fixture(name: &str) -> Result<Arena> {
    match name {
        "fig1" => Ok(build(&FIG1)),
        "fig2" => Ok(build(&FIG2)),
        "fig3" => Ok(build(&FIG3)),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

fn adviser(arena: &Arena, forbidden: &[(&str, &str)]) -> Adviser {
    let mut a = Adviser::empty_for(arena);
    for (s, u) in forbidden {
        a.forbid(s, u);
    }
    a
}

/// The advisers B, C and D drawn for the first arena.
pub fn fig1_alpha(which: &str) -> Adviser {
    let arena = build(&FIG1);
    match which {
        "b" => adviser(
            &arena,
            &[
                ("s2", "u_a3"),
                ("s4", "u_a4"),
                ("s4", "u_a5"),
                ("s6", "u_a6"),
                ("s6", "u_a7"),
            ],
        ),
        "c" => adviser(&arena, &[("s2", "u_a3")]),
        "d" => adviser(&arena, &[("s2", "u_a2"), ("s2", "u_a3")]),
        other => panic!("no adviser `{other}` for fig1"),
    }
}

/// The alternative adviser that steers the second arena to its right branch.
pub fn fig2_alpha_prime() -> Adviser {
    adviser(
        &build(&FIG2),
        &[("s2", "u_a1"), ("s2", "u_a2"), ("s6", "u_a5")],
    )
}

/// The least-limiting adviser of the third arena.
pub fn fig3_alpha_star() -> Adviser {
    adviser(
        &build(&FIG3),
        &[
            ("s2", "u_a2"),
            ("s2", "u_a3"),
            ("s7", "u_a5"),
            ("s8", "u_a7"),
            ("s8", "u_a8"),
            ("s11", "u_a9"),
        ],
    )
}
