//! Series kernels: Maclaurin vs closed form, the cancellation guard, CSV output.
use ramellin::series::{closed_form_kernel, eval_kernel, kernel_table, write_kernel_csv, Parity, PhiSpec, SeriesKernel, Strategy};

fn main() {
    let k = SeriesKernel::new(PhiSpec::Zeta, Parity::Even).unwrap();
    for x in [0.5, 5.0, 30.0] {
        let mac = eval_kernel(&k.with_strategy(Strategy::Maclaurin), x);
        let cf = closed_form_kernel(&k, x);
        println!("x={x:>4}: maclaurin {:+.15e} [{}]  closed form {:+.15e}", mac.value, mac.flags, cf.value);
    }

    // sin x as the odd Power kernel, tabulated
    let sine = SeriesKernel::new(PhiSpec::Power { c: 1.0 }, Parity::Odd).unwrap();
    let xs: Vec<f64> = (0..=8).map(|i| i as f64 * std::f64::consts::PI / 4.0).collect();
    write_kernel_csv(&kernel_table(&sine, &xs), std::io::stdout()).unwrap();
}
