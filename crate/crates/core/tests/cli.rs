use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_percolation-pca"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn simulate_binary_fixed_point() {
    let o = run(&["simulate", "--model", "binary", "--p", "1", "--q", "0", "--init", "zeros", "--steps", "3", "--width", "20"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,width,count0,countQ,count1"));
    assert!(lines.all(|l| l.ends_with(",20,20,0,0")));
}

#[test]
fn envelope_density_trends_down() {
    let args = [
        "simulate", "--model", "envelope", "--p", "1/4", "--q", "1/4", "--init", "qmarks", "--width", "10000", "--steps",
        "1000", "--seed", "1",
    ];
    let o = run(&args);
    assert!(o.status.success());
    let qs: Vec<usize> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(qs.len(), 1001);
    assert_eq!(qs[0], 10_000);
    assert!(qs[10] < qs[1] && qs[1000] <= qs[10]);
    // byte-identical on a second run
    assert_eq!(o.stdout, run(&args).stdout);
}

#[test]
fn centred_neighbourhood_runs() {
    let o = run(&["simulate", "--offset", "-1", "--width", "50", "--steps", "5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["offset"], -1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn game_commands() {
    let o = run(&["game", "--version", "v4", "--p", "1", "--q", "0", "--horizons", "5"]);
    assert!(o.status.success());
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[..6], ["v4", "1", "0", "5", "1000", "0"]);

    let o = run(&["game", "--p-grid", "0.1:0.9:0.2", "--q", "0.1", "--horizons", "3,4", "--samples", "10"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 5 * 2);

    let args = ["game", "--version", "v1", "--p", "1/4", "--q", "1/4", "--horizons", "10,50,100", "--samples", "10000", "--seed", "7"];
    let o = run(&args);
    let fractions: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(5).unwrap().parse().unwrap())
        .collect();
    assert!(fractions.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn verify_commands_and_exit_codes() {
    let o = run(&["verify", "kernel", "--version", "v2", "--p", "1/3", "--q", "1/5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["checks"].as_u64(), v["failures"].as_u64()), (Some(27), Some(0)));

    let o = run(&["verify", "lemmas", "--grid", "coarse"]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["verify", "weights", "--measures", "2", "--grid", "0.25"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 20_240_601);

    // outside the region p + q > 0
    let o = run(&["verify", "kernel", "--p", "0", "--q", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["simulate", "--p", "2/3", "--q", "2/3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("percolation-pca-{}.csv", std::process::id()));
    let o = run(&["sweep", "--width", "64", "--steps", "10", "--out", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("p,q,width,steps,seed,density0,densityQ,density1\n"));
}
