//! CSV and JSON writers. Reals are written with 17 significant digits
//! (`{:.16e}`), '.' as decimal point and LF line endings.

use koenigs::wavefun::WavefunctionGrid;
use koenigs::Spectrum;

pub fn real(v: f64) -> String {
    format!("{v:.16e}")
}

pub const SPECTRUM_HEADER: &str = "space,n1,n2,N,E,residual,bracket_lo,bracket_hi,method";

pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    let mut out = String::from(SPECTRUM_HEADER);
    out.push('\n');
    let space = spectrum.spec.kind();
    for lv in &spectrum.levels {
        let (n1, n2) = lv.qn.pair();
        out.push_str(&format!(
            "{space},{n1},{n2},{},{},{},{},{},{}\n",
            lv.principal(),
            real(lv.energy),
            real(lv.residual),
            real(lv.bracket.0),
            real(lv.bracket.1),
            lv.method.as_str()
        ));
    }
    out
}

pub fn spectrum_json(spectrum: &Spectrum) -> Result<String, serde_json::Error> {
    let mut s = serde_json::to_string_pretty(spectrum)?;
    s.push('\n');
    Ok(s)
}

pub fn wavefunction_csv(grid: &WavefunctionGrid) -> String {
    let (n1, n2) = grid.coordinates.shape();
    let mut out = String::from("coord1,coord2,psi,f_weight\n");
    for i in 0..n1 {
        for j in 0..n2 {
            let (c1, c2) = grid.coordinates.coords(i, j);
            let k = i * n2 + j;
            out.push_str(&format!("{},{},{},{}\n", real(c1), real(c2), real(grid.values[k]), real(grid.f_weight[k])));
        }
    }
    out
}
