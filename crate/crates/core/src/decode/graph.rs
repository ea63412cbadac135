use crate::bitlin::BitMatrix;
use crate::css::{CssCode, Pauli};
use crate::meta::MetaCheck;

/// Edge label. `X` and `Z` edges join an X or Z check to a qubit; `Binary`
/// edges join a check to a read-out bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    X,
    Z,
    Binary,
}

impl EdgeKind {
    /// Whether the check anticommutes with `p` on this edge.
    #[inline]
    pub fn anticommutes(self, p: Pauli) -> bool {
        match self {
            EdgeKind::X => matches!(p, Pauli::Y | Pauli::Z),
            EdgeKind::Z => matches!(p, Pauli::X | Pauli::Y),
            EdgeKind::Binary => false,
        }
    }
}

/// Bipartite check/variable graph in compressed form.
///
/// Variables `0..n` are qubits; in extended graphs `n..n+mx+mz` are the
/// read-out bits of the X checks followed by those of the Z checks. Checks are
/// the X rows, the Z rows, then (extended only) the X and Z meta-check rows.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n: usize,
    readout: usize,
    check_start: Vec<usize>,
    edge_var: Vec<u32>,
    edge_kind: Vec<EdgeKind>,
    var_start: Vec<usize>,
    var_edges: Vec<u32>,
    mx: usize,
    mz: usize,
}

impl TannerGraph {
    pub fn new(code: &CssCode) -> Self {
        let mut b = Builder::new(code.n(), 0);
        b.add_rows(code.hx(), EdgeKind::X, None);
        b.add_rows(code.hz(), EdgeKind::Z, None);
        b.finish(code.hx().rows(), code.hz().rows())
    }

    /// Graph of the extended PCMs `((H | I) / (0 | M))` for both check types.
    pub fn extended(code: &CssCode, meta_x: &MetaCheck, meta_z: &MetaCheck) -> Self {
        let (mx, mz) = (code.hx().rows(), code.hz().rows());
        assert_eq!(meta_x.parent_rows(), mx, "X meta-check does not match Hx");
        assert_eq!(meta_z.parent_rows(), mz, "Z meta-check does not match Hz");
        let n = code.n();
        let mut b = Builder::new(n, mx + mz);
        b.add_rows(code.hx(), EdgeKind::X, Some(n));
        b.add_rows(code.hz(), EdgeKind::Z, Some(n + mx));
        b.add_meta(meta_x.matrix(), n);
        b.add_meta(meta_z.matrix(), n + mx);
        b.finish(mx, mz)
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn readout_bits(&self) -> usize {
        self.readout
    }

    pub fn variables(&self) -> usize {
        self.n + self.readout
    }

    pub fn checks(&self) -> usize {
        self.check_start.len() - 1
    }

    pub fn edges(&self) -> usize {
        self.edge_var.len()
    }

    pub fn is_extended(&self) -> bool {
        self.readout > 0
    }

    /// Number of X and Z check rows.
    pub fn check_rows(&self) -> (usize, usize) {
        (self.mx, self.mz)
    }

    #[inline]
    pub fn check_edges(&self, c: usize) -> std::ops::Range<usize> {
        self.check_start[c]..self.check_start[c + 1]
    }

    #[inline]
    pub fn var_edges(&self, v: usize) -> &[u32] {
        &self.var_edges[self.var_start[v]..self.var_start[v + 1]]
    }

    #[inline]
    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e] as usize
    }

    #[inline]
    pub fn edge_kind(&self, e: usize) -> EdgeKind {
        self.edge_kind[e]
    }
}

struct Builder {
    n: usize,
    readout: usize,
    check_start: Vec<usize>,
    edge_var: Vec<u32>,
    edge_kind: Vec<EdgeKind>,
}

impl Builder {
    fn new(n: usize, readout: usize) -> Self {
        Self {
            n,
            readout,
            check_start: vec![0],
            edge_var: Vec::new(),
            edge_kind: Vec::new(),
        }
    }

    fn add_rows(&mut self, h: &BitMatrix, kind: EdgeKind, readout_base: Option<usize>) {
        for r in 0..h.rows() {
            for c in h.row_support(r) {
                self.edge_var.push(c as u32);
                self.edge_kind.push(kind);
            }
            // The read-out edge goes last so the qubit edges keep their order.
            if let Some(base) = readout_base {
                self.edge_var.push((base + r) as u32);
                self.edge_kind.push(EdgeKind::Binary);
            }
            self.check_start.push(self.edge_var.len());
        }
    }

    fn add_meta(&mut self, m: &BitMatrix, base: usize) {
        for r in 0..m.rows() {
            for c in m.row_support(r) {
                self.edge_var.push((base + c) as u32);
                self.edge_kind.push(EdgeKind::Binary);
            }
            self.check_start.push(self.edge_var.len());
        }
    }

    fn finish(self, mx: usize, mz: usize) -> TannerGraph {
        let vars = self.n + self.readout;
        let mut degree = vec![0usize; vars];
        for &v in &self.edge_var {
            degree[v as usize] += 1;
        }
        let mut var_start = vec![0usize; vars + 1];
        for v in 0..vars {
            var_start[v + 1] = var_start[v] + degree[v];
        }
        let mut fill = var_start.clone();
        let mut var_edges = vec![0u32; self.edge_var.len()];
        for (e, &v) in self.edge_var.iter().enumerate() {
            var_edges[fill[v as usize]] = e as u32;
            fill[v as usize] += 1;
        }
        TannerGraph {
            n: self.n,
            readout: self.readout,
            check_start: self.check_start,
            edge_var: self.edge_var,
            edge_kind: self.edge_kind,
            var_start,
            var_edges,
            mx,
            mz,
        }
    }
}
