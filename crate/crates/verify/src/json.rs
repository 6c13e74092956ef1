//! JSON encodings of the exact objects the suite works with.

use serde_json::{json, Map, Value};
use yqn_core::drinfeld::{AnModule, YqnModule};
use yqn_core::dual_pairing::{Gen, PairingTable};
use yqn_core::scalar::{Coeff, GaussRat, Poly, RatFun};
use yqn_core::sergeev::AnElement;
use yqn_core::superop::{SIndex, Space, SuperOp};
use yqn_core::yangian::GenImage;

pub fn scalar(x: &GaussRat) -> Value {
    Value::String(x.to_string())
}

/// Terms keyed by comma-separated exponent vectors.
pub fn poly(p: &Poly) -> Value {
    let mut m = Map::new();
    for (mono, c) in p.terms() {
        let key: Vec<String> = mono.0.iter().map(u32::to_string).collect();
        m.insert(key.join(","), scalar(c));
    }
    Value::Object(m)
}

pub fn ratfun(f: &RatFun) -> Value {
    json!({ "num": poly(f.num()), "den": poly(f.den()) })
}

/// Row and column labels: signed indices on `(C^{N|N})^{⊗k}`, plain digits
/// on any other space.
fn labels(sp: &Space, n: Option<usize>, idx: usize) -> Vec<i64> {
    let digits = sp.digits(idx);
    match n {
        Some(n) => digits.into_iter().map(|d| SIndex::from_ord(d, n).value() as i64).collect(),
        None => digits.into_iter().map(|d| d as i64).collect(),
    }
}

fn cnn_rank(sp: &Space) -> Option<usize> {
    let d = sp.factor_dim(0);
    (sp.arity() > 0 && d.is_multiple_of(2) && sp.is_cnn(d / 2)).then_some(d / 2)
}

/// `{N, arity, parity, entries}` with entries `[row, col, value]` sorted by
/// row then column labels.
pub fn operator<S: Coeff>(op: &SuperOp<S>, value: impl Fn(&S) -> Value) -> Value {
    let sp = op.rows();
    let n = cnn_rank(sp);
    let mut rows: Vec<(Vec<i64>, Vec<i64>, Value)> = op.entries().map(|(r, c, v)| (labels(sp, n, r), labels(op.cols(), n, c), value(v))).collect();
    rows.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    let entries: Vec<Value> = rows.into_iter().map(|(r, c, v)| json!([r, c, v])).collect();
    json!({
        "N": n,
        "arity": sp.arity(),
        "parity": op.parity(),
        "entries": entries,
    })
}

pub fn gen_image(t: &GenImage) -> Value {
    let mut gens = Vec::new();
    for s in 1..=t.smax() {
        for i in SIndex::all(t.n()) {
            for j in SIndex::all(t.n()) {
                let op = t.get(i, j, s);
                if !op.is_zero() {
                    gens.push(json!({ "i": i.value(), "j": j.value(), "s": s, "image": operator(op, scalar) }));
                }
            }
        }
    }
    json!({ "N": t.n(), "dim": t.carrier().dim(), "parities": parities(t.carrier()), "generators": gens })
}

fn parities(sp: &Space) -> Vec<u8> {
    (0..sp.dim()).map(|k| sp.parity(k)).collect()
}

fn monomial(m: &[Gen]) -> Value {
    Value::Array(m.iter().map(|g| json!([g.i.value(), g.j.value(), g.s])).collect())
}

/// Rows `[Y-monomial, Y*-monomial, value]`, generators as `[i, j, s]`.
pub fn pairing_table(t: &PairingTable) -> Value {
    let rows: Vec<Value> = t.rows.iter().map(|(a, b, v)| json!([monomial(a), monomial(b), scalar(v)])).collect();
    json!({ "N": t.n, "degree": t.degree, "rows": rows })
}

/// `[c-subset, permutation, exponents, coefficient]` per term, 1-based.
pub fn an_element(x: &AnElement) -> Value {
    Value::Array(x.triples().into_iter().map(|(c, w, e, v)| json!([c, w, e, scalar(&v)])).collect())
}

fn plain_matrix(op: &SuperOp<GaussRat>) -> Value {
    let mut e: Vec<(usize, usize, &GaussRat)> = op.entries().collect();
    e.sort_by_key(|t| (t.0, t.1));
    Value::Array(e.into_iter().map(|(r, c, v)| json!([r, c, scalar(v)])).collect())
}

pub fn an_module(m: &AnModule) -> Value {
    let n = m.n();
    json!({
        "n": n,
        "dim": m.dim(),
        "parities": m.parities(),
        "s": (1..n).map(|q| plain_matrix(m.s(q))).collect::<Vec<_>>(),
        "c": (1..=n).map(|p| plain_matrix(m.c(p))).collect::<Vec<_>>(),
        "x": (1..=n).map(|p| plain_matrix(m.x(p))).collect::<Vec<_>>(),
    })
}

pub fn yqn_module(m: &YqnModule) -> Value {
    json!({
        "N": m.big_n(),
        "dim": m.dim(),
        "parities": parities(m.carrier()),
        "coinvariant_basis": m.coinvariants().basis(),
        "table": gen_image(m.table()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use yqn_core::rmatrix::build_r;
    use yqn_core::superop::{cnn, matrix_unit};

    fn ix(i: i32) -> SIndex {
        SIndex::new(i, 1).unwrap()
    }

    #[test]
    fn scalars_use_lowest_terms() {
        assert_eq!(scalar(&GaussRat::from_int(2)), json!("2/1"));
        assert_eq!(scalar(&GaussRat::frac(-2, 4)), json!("-1/2"));
        let z: GaussRat = "-2/4+3*i".parse().unwrap();
        assert_eq!(scalar(&z), json!("-1/2+3/1*i"));
    }

    #[test]
    fn unit_operator_dump() {
        let e = matrix_unit(1, ix(1), ix(-1));
        let v = operator(&e, scalar);
        assert_eq!(v["N"], json!(1));
        assert_eq!(v["arity"], json!(1));
        assert_eq!(v["parity"], json!(1));
        assert_eq!(v["entries"], json!([[[1], [-1], "1/1"]]));
    }

    #[test]
    fn entries_are_sorted() {
        let id = SuperOp::identity_g(cnn(1, 2));
        let v = operator(&id, scalar);
        let rows: Vec<Value> = v["entries"].as_array().unwrap().iter().map(|e| e[0].clone()).collect();
        assert_eq!(rows, vec![json!([-1, -1]), json!([-1, 1]), json!([1, -1]), json!([1, 1])]);
    }

    #[test]
    fn r_matrix_entries_are_rational_functions() {
        let v = operator(&build_r(1), ratfun);
        let first = &v["entries"][0][2];
        assert!(first["num"].is_object() && first["den"].is_object());
        assert_eq!(v["arity"], json!(2));
    }

    #[test]
    fn element_triples() {
        let x = AnElement::x(2, 1);
        assert_eq!(an_element(&x), json!([[[], [1, 2], [1, 0], "1/1"]]));
    }
}
