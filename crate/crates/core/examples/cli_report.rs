//! Drives the command-line front end in-process and captures its JSON.

fn main() {
    let argv = ["su3corr", "two-site", "--lambda", "0"].map(String::from).to_vec();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = su3corr::cli::run_with(argv, &mut out, &mut err);
    let v: serde_json::Value = serde_json::from_slice(&out).expect("json");
    println!("exit {code}: omega33 = {}, alpha33 = {}", v["results"]["omega33"], v["results"]["alpha33"]);
}
