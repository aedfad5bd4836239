use alpha_cf::cli::{parse_and_dispatch, Output};
use serde_json::Value;

fn run(args: &str) -> Output {
    parse_and_dispatch(std::iter::once("alpha-cf").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = run(args);
    assert_eq!(out.status, 0, "{args}: {}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], "alpha-cf/1");
    v
}

#[test]
fn match_seven_tenths() {
    let v = json("match 7/10 --json");
    assert_eq!(v["outcome"], "matched");
    assert_eq!(v["M"], 3);
    assert_eq!(v["N"], 3);
    assert_eq!(v["index"], 0);
    assert_eq!(v["alpha"]["float64"], 0.7);
}

#[test]
fn member_four_fifths_all_methods() {
    let v = json("member 4/5 --method all --json");
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 3);
    assert!(verdicts.iter().all(|x| x["member"] == "Yes"));
    let human = run("member 4/5 --method all");
    assert_eq!(human.stdout.matches("Yes").count(), 3);
}

#[test]
fn expand_seven_tenths() {
    assert_eq!(run("expand 7/10").stdout.trim(), "[0;1,2,3]");
    let v = json("eval [0;1,(2)] --json");
    assert_eq!(v["value"]["exact"], "(0+1*sqrt(2))/2");
}

#[test]
fn interval_record_fields() {
    let v = json("interval 7/10 --json");
    for k in ["left", "right", "leftExpansion", "rightExpansion", "M", "N", "index", "pseudocenter", "caseTag", "n"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["rightExpansion"], "[0;1,(2)]");
    assert_eq!(v["leftExpansion"], "[0;1,2,(3)]");
}

#[test]
fn decimals_are_marked_inexact() {
    let v = json("match 0.7 --json");
    assert_eq!(v["inexact"], true);
    assert_eq!(v["M"], 3);
    // too close to an endpoint to certify
    let v = json("interval 0.7071067811865476 --json");
    assert_eq!(v["inexact"], true);
    assert_eq!(v["outcome"], "undecided");
}

#[test]
fn exit_codes() {
    let out = run("match 3/2 --json");
    assert_eq!(out.status, 1);
    let err: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(err["schema"], "alpha-cf/1");
    assert_eq!(err["error"]["kind"], "Domain");
    assert_eq!(run("match").status, 2);
    assert_eq!(run("nonsense").status, 2);
    assert_eq!(run("match 7/10 --csv").status, 2);
    assert_eq!(run("expand 7/0").status, 1);
    assert_eq!(run("scan --max-den 10 --lo 1/2 --hi 3/2").status, 1);
    assert_eq!(run("--help").status, 0);
}

#[test]
fn scan_is_byte_identical_across_threads() {
    let a = run("scan --max-den 60 --json --threads 1");
    let b = run("scan --max-den 60 --json --threads 4");
    let c = run("scan --max-den 60 --json");
    assert_eq!(a.status, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let csv = run("scan --max-den 60 --csv");
    assert!(csv.stdout.starts_with("left,right,"));
}

#[test]
fn stochastic_verbs_echo_the_seed() {
    let v = json("entropy 0.7 --n-iter 200 --n-samples 10 --seed 42 --json");
    assert_eq!(v["estimates"][0]["seed"], 42);
    let out = run("curve --lo 0.6 --hi 0.7 --step 0.05 --n-iter 200 --n-samples 10 --seed 9 --csv");
    assert_eq!(out.status, 0, "{}", out.stderr);
    assert!(out.stdout.lines().skip(1).all(|l| l.ends_with(",9")));
    let out = run("entropy 0.7 --n-iter 200 --n-samples 10 --seed 42");
    assert!(out.stdout.contains("seed 42"));
}

#[test]
fn orbit_dump_and_members() {
    let out = run("orbit 7/10 --csv");
    assert_eq!(out.stdout.lines().next(), Some("n,value,digit,float64"));
    assert_eq!(out.stdout.lines().nth(1), Some("0,-3/10,,-0.3"));
    let v = json("gen-members --family nminus1 --n 6 --json");
    assert_eq!(v["members"].as_array().unwrap().len(), 4);
    let v = json("gen-members --family gamma --a-max 3 --json");
    assert_eq!(v["members"][0]["upperPseudocenter"], "8/11");
    let v = json("gen-members --family hatC --n 1 --expansion [0;(2)] --json");
    assert_eq!(v["members"][0]["expansion"], "[0;1,1,1,1,1,(2)]");
}

#[test]
fn coverage_and_dimension() {
    let out = run("coverage --max-den 10,50 --csv");
    assert_eq!(out.status, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().count(), 3);
    let v = json("dim --max-den 200 --levels 1,2,3,4 --json");
    assert_eq!(v["levels"].as_array().unwrap().len(), 4);
    assert_eq!(v["upperBound"], true);
}
