//! Correlations of the single-point complex model that reaches 2√2.

use fieldlhv::chsh::{self, AliceSetting, BobSetting};

fn main() -> fieldlhv::Result<()> {
    let model = chsh::make_achieving_model();
    for a in [AliceSetting::A, AliceSetting::APrime] {
        for b in [BobSetting::B, BobSetting::BPrime] {
            let e = chsh::correlation(&model, a, b)?;
            println!("E({a:?}, {b:?}) = {:+.6} {:+.6}i", e.re, e.im);
        }
    }
    println!("bell expression = {:.12}", chsh::bell_expression(&model)?);
    println!("2√2             = {:.12}", 2.0 * 2f64.sqrt());
    println!("{}", serde_json::to_string_pretty(&model).expect("model serializes"));
    Ok(())
}
