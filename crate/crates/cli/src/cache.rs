//! On-disk cache of harmonic bases keyed by a content hash of the complex,
//! the weights, the tolerance and the degree.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use formality_core::hodge::{HarmonicBasis, MetricWeights};
use formality_core::SimplicialComplex;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "FORMALITY_CACHE_DIR";

/// Bumped whenever the stored layout or the basis algorithm changes.
const FORMAT: &str = "harmonic-basis/1";

pub struct Cache {
    dir: PathBuf,
    complex_json: String,
}

impl Cache {
    /// Enabled only when the cache directory variable is set and non-empty.
    pub fn from_env(k: &SimplicialComplex) -> Option<Self> {
        let dir = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty())?;
        Some(Self::new(PathBuf::from(dir), k))
    }

    pub fn new(dir: PathBuf, k: &SimplicialComplex) -> Self {
        Self { dir, complex_json: k.to_json() }
    }

    pub fn key(&self, w: &MetricWeights, tolerance: f64, degree: usize) -> String {
        let mut h = Sha256::new();
        h.update(FORMAT.as_bytes());
        h.update([0]);
        h.update(self.complex_json.as_bytes());
        h.update([0]);
        for d in w.degrees() {
            h.update((d.len() as u64).to_le_bytes());
            for x in d {
                h.update(x.to_bits().to_le_bytes());
            }
        }
        h.update(tolerance.to_bits().to_le_bytes());
        h.update((degree as u64).to_le_bytes());
        format!("{:x}", h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored basis, if present and consistent with the request.
    pub fn load(&self, w: &MetricWeights, tolerance: f64, degree: usize) -> Option<HarmonicBasis> {
        let text = fs::read_to_string(self.path(&self.key(w, tolerance, degree))).ok()?;
        let b: HarmonicBasis = serde_json::from_str(&text).ok()?;
        let len = w.degree(degree).len();
        let fits = b.degree == degree
            && b.tolerance.to_bits() == tolerance.to_bits()
            && b.weights_fingerprint == w.fingerprint()
            && b.vectors.iter().all(|v| v.degree == degree && v.values.len() == len);
        fits.then_some(b)
    }

    /// Writes through a temporary file and a rename, so readers never see a
    /// partial entry and concurrent writers of the same key are harmless.
    pub fn store(&self, w: &MetricWeights, tolerance: f64, b: &HarmonicBasis) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = self.key(w, tolerance, b.degree);
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(b)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(&key))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}
