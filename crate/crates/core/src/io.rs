//! JSON inputs validated against their schemas before any computation; the
//! first violation is reported with its path.

use std::fmt;

use serde::de::DeserializeOwned;

use crate::clifford::{OctonionTable, OctonionTableJson, DIM};
use crate::forms::{KForm, KFormJson};
use crate::gstructure::{GStructure, GStructureError, GroupJson};
use crate::homogeneous::{ReductiveSpace, ReductiveSpaceJson};
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::torsion::{GammaJson, GammaTensor, M_DIM};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    /// `.` for the document root, otherwise e.g. `rows[3]` or `terms[0].idx`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "schema violation at {}: {}", self.path, self.message)
    }
}

impl std::error::Error for SchemaError {}

fn violation(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError { path: path.into(), message: message.into() }
}

/// Deserializes with the path of the first type error.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        violation(path, e.into_inner().to_string())
    })
}

fn check_len<T>(v: &[T], want: usize, path: &str) -> Result<(), SchemaError> {
    if v.len() != want {
        return Err(violation(path, format!("expected {want} entries, found {}", v.len())));
    }
    Ok(())
}

fn check_grid<T>(rows: &[Vec<T>], r: usize, c: usize, path: &str) -> Result<(), SchemaError> {
    check_len(rows, r, path)?;
    for (i, row) in rows.iter().enumerate() {
        check_len(row, c, &format!("{path}[{i}]"))?;
    }
    Ok(())
}

/// `{"n":16, "basis":"sigma", "rows":[[84 fractions] × 16]}`.
pub fn read_gamma(text: &str) -> Result<GammaTensor, SchemaError> {
    let j: GammaJson = parse(text)?;
    if j.n != DIM {
        return Err(violation("n", format!("expected {DIM}, found {}", j.n)));
    }
    if j.basis != "sigma" {
        return Err(violation("basis", format!("expected \"sigma\", found {:?}", j.basis)));
    }
    check_grid(&j.rows, DIM, M_DIM, "rows")?;
    Ok(GammaTensor::from_rows(j.rows).expect("shape checked"))
}

/// `{"n", "k", "terms":[{"idx":[1-based increasing], "c":"p/q"}]}`.
pub fn read_kform(text: &str) -> Result<KForm, SchemaError> {
    let j: KFormJson = parse(text)?;
    if j.k > j.n {
        return Err(violation("k", format!("degree {} exceeds n = {}", j.k, j.n)));
    }
    for (t, term) in j.terms.iter().enumerate() {
        let path = format!("terms[{t}].idx");
        check_len(&term.idx, j.k, &path)?;
        if let Some(p) = term.idx.iter().position(|&i| i == 0 || i > j.n) {
            return Err(violation(format!("{path}[{p}]"), format!("index must lie in 1..={}", j.n)));
        }
        if let Some(p) = term.idx.windows(2).position(|w| w[0] >= w[1]) {
            return Err(violation(format!("{path}[{}]", p + 1), "indices must be strictly increasing"));
        }
    }
    Ok(KForm::from_json(&j).expect("terms checked"))
}

pub fn read_matrix(text: &str) -> Result<Matrix<Rational>, SchemaError> {
    parse(text)
}

/// ReductiveSpace JSON; shapes first, then antisymmetry and metric symmetry.
pub fn read_space(text: &str) -> Result<ReductiveSpace, SchemaError> {
    let j: ReductiveSpaceJson = parse(text)?;
    let (h, n) = (j.dim_h, j.dim_n);
    let cube = |t: &[Vec<Vec<Rational>>], a: usize, b: usize, c: usize, path: &str| -> Result<(), SchemaError> {
        check_grid(t, a, b, path)?;
        for (x, row) in t.iter().enumerate() {
            for (y, v) in row.iter().enumerate() {
                check_len(v, c, &format!("{path}[{x}][{y}]"))?;
            }
        }
        Ok(())
    };
    cube(&j.bracket_nn, n, n, h + n, "bracket_nn")?;
    cube(&j.bracket_hn, h, n, n, "bracket_hn")?;
    if let Some(hh) = &j.bracket_hh {
        cube(hh, h, h, h, "bracket_hh")?;
    }
    check_grid(&j.metric_n, n, n, "metric_n")?;
    if let Some(id) = &j.identification {
        check_grid(id, DIM, n, "identification")?;
    }
    let antisym = |t: &[Vec<Vec<Rational>>], path: &str| -> Result<(), SchemaError> {
        for x in 0..t.len() {
            for y in x..t.len() {
                if t[x][y].iter().zip(&t[y][x]).any(|(a, b)| a != &-b) {
                    return Err(violation(format!("{path}[{y}][{x}]"), "bracket is not antisymmetric"));
                }
            }
        }
        Ok(())
    };
    antisym(&j.bracket_nn, "bracket_nn")?;
    if let Some(hh) = &j.bracket_hh {
        antisym(hh, "bracket_hh")?;
    }
    for x in 0..n {
        for y in x + 1..n {
            if j.metric_n[x][y] != j.metric_n[y][x] {
                return Err(violation(format!("metric_n[{y}][{x}]"), "metric is not symmetric"));
            }
        }
    }
    ReductiveSpace::from_json(j).map_err(|e| violation(".", e.to_string()))
}

/// `{"n": int, "g_basis": [matrix, ...]}`; builds the orthogonal splitting.
pub fn read_group(text: &str, label: &str) -> Result<GStructure, SchemaError> {
    let j: GroupJson = parse(text)?;
    for (i, m) in j.g_basis.iter().enumerate() {
        if m.rows() != j.n || m.cols() != j.n {
            return Err(violation(format!("g_basis[{i}]"), format!("expected a {0} × {0} matrix", j.n)));
        }
        if !m.is_skew() {
            return Err(violation(format!("g_basis[{i}]"), "matrix is not skew-symmetric"));
        }
    }
    GStructure::from_g_basis(label, j.n, &j.g_basis).map_err(|e| match e {
        GStructureError::NotSkew(i, _) => violation(format!("g_basis[{i}]"), e.to_string()),
        other => violation("g_basis", other.to_string()),
    })
}

/// `{"products": [[7 entries] × 7]}` with entries like `"e3"`, `"-e5"`, `"-1"`.
pub fn read_octonion_table(text: &str) -> Result<OctonionTable, SchemaError> {
    let j: OctonionTableJson = parse(text)?;
    check_grid(&j.products, 7, 7, "products")?;
    OctonionTable::from_strings(&j.products).map_err(|e| {
        let bad = j.products.iter().enumerate().find_map(|(r, row)| {
            row.iter()
                .position(|s| OctonionTable::from_strings(&vec![vec![s.clone(); 7]; 7]).is_err())
                .map(|c| format!("products[{r}][{c}]"))
        });
        violation(bad.unwrap_or_else(|| "products".into()), e.to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordSystem;
    use crate::torsion::embed_three_form;

    fn path_of<T: fmt::Debug>(r: Result<T, SchemaError>) -> String {
        r.unwrap_err().path
    }

    #[test]
    fn gamma_round_trip_and_paths() {
        let s = CliffordSystem::build_standard().unwrap();
        let g = embed_three_form(&s, &KForm::basis(DIM, &[0, 3, 9]).unwrap()).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(read_gamma(&text).unwrap(), g);

        let mut j = g.to_json();
        j.rows[4].pop();
        assert_eq!(path_of(read_gamma(&serde_json::to_string(&j).unwrap())), "rows[4]");
        let bad = text.replacen("\"1/8\"", "\"1/0\"", 1);
        assert!(path_of(read_gamma(&bad)).starts_with("rows["));
        assert_eq!(path_of(read_gamma(r#"{"n":16,"basis":"omega","rows":[]}"#)), "basis");
        assert_eq!(path_of(read_gamma(r#"{"n":"16","basis":"sigma","rows":[]}"#)), "n");
    }

    #[test]
    fn kform_paths() {
        let ok = r#"{"n":4,"k":2,"terms":[{"idx":[1,3],"c":"-2/3"}]}"#;
        assert_eq!(read_kform(ok).unwrap().coeffs()[1], Rational::new(-2, 3));
        assert_eq!(path_of(read_kform(r#"{"n":4,"k":2,"terms":[{"idx":[3,1],"c":"1"}]}"#)), "terms[0].idx[1]");
        assert_eq!(path_of(read_kform(r#"{"n":4,"k":2,"terms":[{"idx":[1,2],"c":"1"},{"idx":[5,6],"c":"1"}]}"#)), "terms[1].idx[0]");
        assert_eq!(path_of(read_kform(r#"{"n":4,"k":2,"terms":[{"idx":[1,2],"c":"x"}]}"#)), "terms[0].c");
    }

    #[test]
    fn space_paths() {
        let sp = crate::homogeneous::abelian(2);
        let mut j = sp.to_json();
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(read_space(&text).unwrap(), sp);
        j.bracket_nn[0][1][0] = Rational::one();
        assert_eq!(path_of(read_space(&serde_json::to_string(&j).unwrap())), "bracket_nn[1][0]");
        j.bracket_nn[0][1].push(Rational::one());
        assert_eq!(path_of(read_space(&serde_json::to_string(&j).unwrap())), "bracket_nn[0][1]");
        assert_eq!(path_of(read_space(r#"{"dim_h":0}"#)), ".");
    }

    #[test]
    fn group_and_table_paths() {
        let skew = r#"{"rows":2,"cols":2,"entries":[["0","-1"],["1","0"]]}"#;
        let sym = r#"{"rows":2,"cols":2,"entries":[["0","1"],["1","0"]]}"#;
        let gs = read_group(&format!(r#"{{"n":2,"g_basis":[{skew}]}}"#), "so2").unwrap();
        assert_eq!((gs.g_basis.len(), gs.m_basis.len()), (1, 0));
        assert_eq!(path_of(read_group(&format!(r#"{{"n":2,"g_basis":[{skew},{sym}]}}"#), "x")), "g_basis[1]");

        let mut rows = OctonionTable::standard().to_strings();
        let text = |rows: &Vec<Vec<String>>| serde_json::json!({ "products": rows }).to_string();
        assert_eq!(read_octonion_table(&text(&rows)).unwrap(), OctonionTable::standard());
        rows[2][5] = "e9".into();
        assert_eq!(path_of(read_octonion_table(&text(&rows))), "products[2][5]");
    }
}
