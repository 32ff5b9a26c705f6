#![allow(dead_code)]

use std::path::PathBuf;

use greenseq_cli::{run, CommandResult};

pub fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

pub fn greenseq(args: &[&str]) -> CommandResult {
    run(std::iter::once("greenseq").chain(args.iter().copied()))
}

/// A recorded invocation: golden file stem, arguments (`@` expands to the
/// data directory), expected exit code.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: u8,
}

pub const CASES: &[Case] = &[
    Case { name: "quiver_info_a3", args: &["quiver", "info", "A3"], exit: 0 },
    Case { name: "quiver_info_kronecker", args: &["quiver", "info", "@quivers/kronecker.qv"], exit: 0 },
    Case { name: "roots_list_d4", args: &["roots", "list", "D4"], exit: 0 },
    Case { name: "roots_list_a3_json", args: &["roots", "list", "A3", "--json"], exit: 0 },
    Case { name: "count_chains_a2", args: &["weyl", "count-chains", "A2"], exit: 0 },
    Case { name: "count_chains_a3", args: &["weyl", "count-chains", "A3"], exit: 0 },
    Case { name: "count_chains_a4", args: &["weyl", "count-chains", "A4"], exit: 0 },
    Case { name: "count_chains_a5", args: &["weyl", "count-chains", "A5"], exit: 0 },
    Case { name: "count_chains_a6", args: &["weyl", "count-chains", "A6"], exit: 0 },
    Case { name: "count_chains_d4", args: &["weyl", "count-chains", "D4"], exit: 0 },
    Case { name: "weyl_hasse_a3", args: &["weyl", "hasse", "A3", "--dot"], exit: 0 },
    Case { name: "weyl_chains_a3_json", args: &["weyl", "chains", "A3", "--json"], exit: 0 },
    Case { name: "mgs_enumerate_a3_json", args: &["mgs", "enumerate", "A3", "--json"], exit: 0 },
    Case { name: "mgs_enumerate_d4_limit", args: &["mgs", "enumerate", "D4", "--limit", "10"], exit: 0 },
    Case { name: "mgs_validate_a2_bad", args: &["mgs", "validate", "A2", "--roots", "1,0;0,1;1,1"], exit: 1 },
    Case { name: "mgs_validate_a3_prefix", args: &["mgs", "validate", "A3", "--roots", "0,1,0;1,1,0", "--prefix"], exit: 0 },
    Case { name: "mgs_from_charge_a2", args: &["mgs", "from-charge", "A2", "--charge", "s1=-1/1,1/1;s2=1/1,1/1"], exit: 0 },
    Case { name: "mgs_enumerate_kronecker", args: &["mgs", "enumerate", "@quivers/kronecker.qv"], exit: 2 },
    Case { name: "mgs_enumerate_affine_a2", args: &["mgs", "enumerate", "@quivers/affine_a2.qv"], exit: 2 },
    Case { name: "torsion_lattice_a3", args: &["torsion", "lattice", "A3", "--dot"], exit: 0 },
    Case { name: "torsion_lattice_a2_json", args: &["torsion", "lattice", "A2", "--json"], exit: 0 },
    Case { name: "torsion_count_d4", args: &["torsion", "count", "D4"], exit: 0 },
    Case { name: "check_opposite_a4", args: &["torsion", "check-opposite", "A4"], exit: 0 },
    Case { name: "check_opposite_d4", args: &["torsion", "check-opposite", "D4"], exit: 0 },
    Case { name: "fuzz_a2", args: &["stability", "fuzz", "A2", "--seeds", "1000", "--csv"], exit: 0 },
    Case { name: "fuzz_a3", args: &["stability", "fuzz", "A3", "--seeds", "1000", "--csv"], exit: 0 },
    Case { name: "fuzz_d4", args: &["stability", "fuzz", "D4", "--seeds", "1000", "--csv"], exit: 0 },
    Case { name: "modlab_a2_brick", args: &["modlab", "check", "@modules/a2_brick.rep", "--charge", "s1=-1,1;s2=1,1"], exit: 0 },
    Case { name: "modlab_a2_brick_swapped", args: &["modlab", "check", "@modules/a2_brick.rep", "--charge", "s1=1,1;s2=-1,1"], exit: 0 },
    Case { name: "modlab_a3_sink", args: &["modlab", "check", "@modules/a3_sink.rep"], exit: 0 },
    Case { name: "modlab_a2_relations_fail", args: &["modlab", "check", "@modules/a2_relations_fail.rep"], exit: 1 },
    Case { name: "modlab_a2_double_f3", args: &["modlab", "check", "@modules/a2_double_f3.rep"], exit: 0 },
];

impl Case {
    pub fn argv(&self) -> Vec<String> {
        self.args
            .iter()
            .map(|a| match a.strip_prefix('@') {
                Some(rel) => data(rel),
                None => a.to_string(),
            })
            .collect()
    }

    pub fn run(&self) -> CommandResult {
        let argv = self.argv();
        let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
        greenseq(&refs)
    }

    /// Golden text: stdout, then stderr lines prefixed with `# stderr: `,
    /// then the exit code on a trailer line.
    pub fn render(result: &CommandResult) -> String {
        let mut text = result.stdout.clone();
        for line in result.stderr.lines() {
            text.push_str(&format!("# stderr: {line}\n"));
        }
        text.push_str(&format!("# exit {}\n", result.exit_code));
        text
    }

    pub fn golden_path(&self) -> PathBuf {
        golden_dir().join(format!("{}.out", self.name))
    }
}
