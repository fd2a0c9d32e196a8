use std::fmt::Write;

use crate::record::ResultRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

pub fn render(rec: &ResultRecord, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(rec).expect("records serialize"),
        Format::Text => text(rec),
        Format::Latex => latex(rec),
    }
}

fn product(fs: &[(String, usize)]) -> String {
    if fs.is_empty() {
        return "1".into();
    }
    fs.iter()
        .map(|(g, e)| {
            let g = if g.contains(['+', '-']) { format!("({g})") } else { g.clone() };
            if *e == 1 {
                g
            } else {
                format!("{g}^{e}")
            }
        })
        .collect()
}

fn text(rec: &ResultRecord) -> String {
    let mut s = String::new();
    let [a, b, c] = &rec.triple;
    let [oa, ob, oc] = rec.orders;
    let _ = writeln!(s, "triple     {a} {b} {c}  (degree {}, orders ({oa},{ob},{oc}), genus {})", rec.degree, rec.genus);
    if let Some(err) = &rec.error {
        let _ = writeln!(s, "error      {err}");
        return s;
    }
    if let Some(f) = &rec.field {
        let _ = writeln!(s, "field      {}", f.text);
    }
    if let (Some(n), Some(r)) = (rec.isogeny_degree, rec.rotation_index) {
        let _ = writeln!(s, "isogeny    degree {n}, rotation index {r}");
    }
    if let Some(f) = &rec.factored {
        let _ = writeln!(s, "phi        {}", rec.phi.as_ref().map(|p| p.text.as_str()).unwrap_or(""));
        let _ = writeln!(s, "over 0     {}", product(&f.over_zero));
        let _ = writeln!(s, "over 1     {}", product(&f.over_one));
        let _ = writeln!(s, "over inf   {}", product(&f.over_infinity));
        let _ = writeln!(s, "leading    phi: {}, phi - 1: {}", f.lead, f.lead_one);
    }
    if let Some(e) = &rec.elliptic {
        let _ = writeln!(s, "curve      {}", e.curve.text);
        let _ = writeln!(s, "phi        ({}) + ({})*y", e.a.text, e.b.text);
    }
    if let Some([z, o, i]) = &rec.labels {
        let _ = writeln!(s, "labels     {z} over 0, {o} over 1, {i} over inf");
    }
    let v = &rec.verification;
    match &v.profiles {
        Some(p) => {
            let _ = writeln!(s, "verified   {} (profiles {:?} {:?} {:?})", v.status, p[0], p[1], p[2]);
        }
        None => {
            let _ = writeln!(s, "verified   {}", v.status);
        }
    }
    s
}

fn tex(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '*' => out.push(' '),
            '^' => {
                let mut exp = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    exp.push(*d);
                    chars.next();
                }
                let _ = write!(out, "^{{{exp}}}");
            }
            _ => out.push(ch),
        }
    }
    out.replace("z6", "\\zeta_6").replace("th", "\\theta")
}

fn tex_product(fs: &[(String, usize)]) -> String {
    tex(&product(fs))
}

fn latex(rec: &ResultRecord) -> String {
    let mut s = String::new();
    if let Some(err) = &rec.error {
        let _ = writeln!(s, "% {}: {err}", rec.triple.join(" "));
        return s;
    }
    if let Some(f) = &rec.factored {
        let _ = writeln!(
            s,
            "\\[ \\varphi(x) = {} \\cdot \\frac{{{}}}{{{}}}, \\qquad \\varphi(x) - 1 = {} \\cdot \\frac{{{}}}{{{}}} \\]",
            tex(&f.lead),
            tex_product(&f.over_zero),
            tex_product(&f.over_infinity),
            tex(&f.lead_one),
            tex_product(&f.over_one),
            tex_product(&f.over_infinity),
        );
    }
    if let Some(e) = &rec.elliptic {
        let _ = writeln!(s, "\\[ E\\colon {} \\]", tex(&e.curve.text));
        let _ = writeln!(s, "\\[ \\varphi = {} + \\left({}\\right) y \\]", tex(&e.a.text), tex(&e.b.text));
    }
    s
}
