//! Running the command surface programmatically: a job configuration, CSV rendering, and a
//! table export with its manifest.

use hallq::io::{run_command, Format, JobConfig};

fn main() -> hallq::Result<()> {
    let cfg = JobConfig::from_toml(
        r#"
        quiver = "A2"
        q = 5
        format = "csv"
        [args]
        side = "c2"
        l = "C[2*(0,1)]"
        m = "C[(0,1)]"
        n = "C[(0,1)]"
        oracle = true
        "#,
    )?;
    let report = run_command("hallnum", &cfg)?;
    print!("{}", report.render(Format::Csv)?);
    println!("exit code {}", report.exit_code());

    let out = std::env::temp_dir().join("hallq-example-export");
    let mut cfg = JobConfig::from_toml("quiver = \"A1\"\nprimes = [2, 3, 5, 7]\n[window]\ndim = [3]\n")?;
    cfg.args.out = Some(out.display().to_string());
    let report = run_command("export-tables", &cfg)?;
    println!("wrote {} into {}", report.result["files"], out.display());
    print!("{}", std::fs::read_to_string(out.join("a_table.csv"))?);
    Ok(())
}
