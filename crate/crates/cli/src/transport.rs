//! OEIS b-file sources: the cache directory, the bundled fixtures and the network.

use std::path::PathBuf;
use std::time::Duration;

use rectlab::oeis::{bfile_name, FixtureTransport, Transport};
use rectlab::{Error, Result};

use crate::config::Network;

/// Downloads from oeis.org.
pub struct HttpTransport {
    agent: ureq::Agent,
}

impl HttpTransport {
    pub fn new() -> Self {
        let config = ureq::Agent::config_builder().timeout_global(Some(Duration::from_secs(30))).build();
        HttpTransport { agent: config.into() }
    }
}

impl Default for HttpTransport {
    fn default() -> Self {
        Self::new()
    }
}

impl Transport for HttpTransport {
    fn bfile(&self, id: &str) -> Result<String> {
        let url = format!("https://oeis.org/{id}/{}", bfile_name(id)?);
        let mut resp = self.agent.get(&url).call().map_err(|e| Error::Oeis(format!("fetching {url}: {e}")))?;
        resp.body_mut().read_to_string().map_err(|e| Error::Oeis(format!("reading {url}: {e}")))
    }
}

/// Offline: cache directory, then bundled fixtures. Fetch: the remote, recorded into the cache.
pub struct Layered {
    pub cache: Option<FixtureTransport>,
    pub bundled: FixtureTransport,
    pub remote: Option<Box<dyn Transport>>,
}

impl Layered {
    pub fn new(policy: Network, cache: Option<PathBuf>, remote: impl FnOnce() -> Box<dyn Transport>) -> Result<Self> {
        let remote = match policy {
            Network::Offline => None,
            Network::Fetch => {
                if cache.is_none() {
                    return Err(Error::Oeis("fetch mode needs a cache directory to record into".into()));
                }
                Some(remote())
            }
        };
        Ok(Layered { cache: cache.map(FixtureTransport::new), bundled: FixtureTransport::bundled(), remote })
    }
}

impl Transport for Layered {
    fn bfile(&self, id: &str) -> Result<String> {
        if let Some(r) = &self.remote {
            let text = r.bfile(id)?;
            let cache = self.cache.as_ref().expect("fetch mode has a cache");
            std::fs::create_dir_all(&cache.dir)?;
            std::fs::write(cache.path(id)?, &text)?;
            return Ok(text);
        }
        if let Some(c) = &self.cache {
            if let Ok(t) = c.bfile(id) {
                return Ok(t);
            }
        }
        self.bundled.bfile(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct NoNetwork;

    impl Transport for NoNetwork {
        fn bfile(&self, id: &str) -> Result<String> {
            panic!("network opened for {id}");
        }
    }

    struct Canned;

    impl Transport for Canned {
        fn bfile(&self, _: &str) -> Result<String> {
            Ok("1 1\n2 2\n".into())
        }
    }

    #[test]
    fn offline_never_builds_the_remote() {
        let dir = tempfile::tempdir().unwrap();
        let t = Layered::new(Network::Offline, Some(dir.path().into()), || panic!("remote constructed")).unwrap();
        assert!(t.remote.is_none());
        let _ = Layered::new(Network::Offline, None, || Box::new(NoNetwork)).unwrap().bfile("A999999");
        std::fs::write(dir.path().join("b999999.txt"), "1 5\n").unwrap();
        assert_eq!(t.bfile("A999999").unwrap(), "1 5\n");
    }

    #[test]
    fn fetch_records_into_the_cache() {
        let dir = tempfile::tempdir().unwrap();
        let sub = dir.path().join("fixtures");
        let t = Layered::new(Network::Fetch, Some(sub.clone()), || Box::new(Canned)).unwrap();
        t.bfile("A000001").unwrap();
        assert_eq!(std::fs::read_to_string(sub.join("b000001.txt")).unwrap(), "1 1\n2 2\n");
        assert!(Layered::new(Network::Fetch, None, || Box::new(Canned)).is_err());
    }
}
