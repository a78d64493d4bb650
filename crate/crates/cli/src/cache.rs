//! On-disk elimination cache. One directory per input hash, one JSON file per
//! kept set. Files are written to a temporary name and renamed into place, so
//! concurrent writers of identical content never leave a torn file.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use lindstrom::algmat::EliminationStore;
use lindstrom::set::ElementSet;

pub struct DiskStore {
    dir: PathBuf,
}

impl DiskStore {
    pub fn open(root: PathBuf, input_hash: &str) -> std::io::Result<Self> {
        let dir = root.join(input_hash);
        fs::create_dir_all(&dir)?;
        Ok(DiskStore { dir })
    }

    fn path(&self, keep: ElementSet) -> PathBuf {
        self.dir.join(format!("{:016x}.json", keep.bits()))
    }
}

impl EliminationStore for DiskStore {
    fn load(&self, keep: ElementSet) -> Option<Vec<String>> {
        let text = fs::read(self.path(keep)).ok()?;
        serde_json::from_slice(&text).ok()
    }

    fn save(&self, keep: ElementSet, generators: &[String]) {
        // a failed write only costs a recomputation later
        let _ = (|| -> std::io::Result<()> {
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
            tmp.write_all(&serde_json::to_vec(generators)?)?;
            tmp.persist(self.path(keep)).map_err(|e| e.error)?;
            Ok(())
        })();
    }
}
