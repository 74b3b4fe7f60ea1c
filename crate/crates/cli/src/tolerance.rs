use std::collections::BTreeMap;

use clap::Args;
use qdiv::Tolerances64;

/// Tolerance overrides. Each flag falls back to a `QDIV_TOL_*` environment
/// variable, then to the library default.
#[derive(Debug, Clone, Default, Args)]
pub struct TolArgs {
    #[arg(long = "tol-herm", env = "QDIV_TOL_HERM", global = true, value_name = "X")]
    pub herm: Option<f64>,
    #[arg(long = "tol-psd", env = "QDIV_TOL_PSD", global = true, value_name = "X")]
    pub psd: Option<f64>,
    #[arg(long = "tol-trace", env = "QDIV_TOL_TRACE", global = true, value_name = "X")]
    pub trace: Option<f64>,
    #[arg(long = "tol-num", env = "QDIV_TOL_NUM", global = true, value_name = "X")]
    pub num: Option<f64>,
    #[arg(long = "tol-cluster", env = "QDIV_TOL_CLUSTER", global = true, value_name = "X")]
    pub cluster: Option<f64>,
    #[arg(long = "tol-supp", env = "QDIV_TOL_SUPP", global = true, value_name = "X")]
    pub supp: Option<f64>,
    #[arg(long = "tol-skip", env = "QDIV_TOL_SKIP", global = true, value_name = "X")]
    pub skip: Option<f64>,
    #[arg(long = "tol-bisect", env = "QDIV_TOL_BISECT", global = true, value_name = "X")]
    pub bisect: Option<f64>,
    #[arg(long = "tol-wigner", env = "QDIV_TOL_WIGNER", global = true, value_name = "X")]
    pub wigner: Option<f64>,
    #[arg(
        long = "tol-reconstruct",
        env = "QDIV_TOL_RECONSTRUCT",
        global = true,
        value_name = "X"
    )]
    pub reconstruct: Option<f64>,
    #[arg(
        long = "tol-pure-margin",
        env = "QDIV_TOL_PURE_MARGIN",
        global = true,
        value_name = "X"
    )]
    pub pure_margin: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Tolerances64 {
        let mut t = Tolerances64::default();
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut t.herm, self.herm);
        set(&mut t.psd, self.psd);
        set(&mut t.trace, self.trace);
        set(&mut t.num, self.num);
        set(&mut t.cluster, self.cluster);
        set(&mut t.supp, self.supp);
        set(&mut t.skip, self.skip);
        set(&mut t.bisect, self.bisect);
        set(&mut t.wigner, self.wigner);
        set(&mut t.reconstruct, self.reconstruct);
        set(&mut t.pure_margin, self.pure_margin);
        t
    }
}

/// Name-sorted view for reports.
pub fn tolerance_map(t: &Tolerances64) -> BTreeMap<&'static str, f64> {
    BTreeMap::from([
        ("bisect", t.bisect),
        ("cluster", t.cluster),
        ("herm", t.herm),
        ("num", t.num),
        ("psd", t.psd),
        ("pure_margin", t.pure_margin),
        ("reconstruct", t.reconstruct),
        ("skip", t.skip),
        ("supp", t.supp),
        ("trace", t.trace),
        ("wigner", t.wigner),
    ])
}
