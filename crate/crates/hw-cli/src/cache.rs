//! Optional persistent cache of character tables and Weingarten rational
//! functions, keyed by the HW_CACHE_DIR environment variable. The format is
//! versioned; a file with the wrong magic or version is ignored and
//! rewritten.

use std::io::{Read, Write};
use std::path::PathBuf;

use num_bigint::{BigInt, Sign};

use hw_core::partition::IntegerPartition;
use hw_core::poly::PolyZ;
use hw_core::ratfun::RatFun;
use hw_core::weingarten::WgContext;

const MAGIC: &[u8; 8] = b"HWCACHE\x01";
const VERSION: u32 = 1;

pub fn cache_path() -> Option<PathBuf> {
    std::env::var_os("HW_CACHE_DIR").map(|dir| PathBuf::from(dir).join("hw-tables.bin"))
}

struct Writer(Vec<u8>);

impl Writer {
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn i64(&mut self, v: i64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn bigint(&mut self, v: &BigInt) {
        let (sign, bytes) = v.to_bytes_le();
        self.0.push(match sign {
            Sign::Minus => 2,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        });
        self.u32(bytes.len() as u32);
        self.0.extend_from_slice(&bytes);
    }
    fn partition(&mut self, p: &IntegerPartition) {
        self.u32(p.num_parts() as u32);
        for &part in p.parts() {
            self.u32(part);
        }
    }
    fn poly(&mut self, p: &PolyZ) {
        self.u32(p.coeffs().len() as u32);
        for c in p.coeffs() {
            self.bigint(c);
        }
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let s = self.buf.get(self.pos..self.pos + n)?;
        self.pos += n;
        Some(s)
    }
    fn u32(&mut self) -> Option<u32> {
        Some(u32::from_le_bytes(self.take(4)?.try_into().ok()?))
    }
    fn i64(&mut self) -> Option<i64> {
        Some(i64::from_le_bytes(self.take(8)?.try_into().ok()?))
    }
    fn bigint(&mut self) -> Option<BigInt> {
        let tag = *self.take(1)?.first()?;
        let len = self.u32()? as usize;
        let bytes = self.take(len)?;
        let sign = match tag {
            2 => Sign::Minus,
            1 => Sign::Plus,
            _ => Sign::NoSign,
        };
        Some(BigInt::from_bytes_le(sign, bytes))
    }
    fn partition(&mut self) -> Option<IntegerPartition> {
        let n = self.u32()? as usize;
        let mut parts = Vec::with_capacity(n);
        for _ in 0..n {
            parts.push(self.u32()?);
        }
        IntegerPartition::new(parts).ok()
    }
    fn poly(&mut self) -> Option<PolyZ> {
        let n = self.u32()? as usize;
        let mut coeffs = Vec::with_capacity(n);
        for _ in 0..n {
            coeffs.push(self.bigint()?);
        }
        Some(PolyZ::from_coeffs(coeffs))
    }
}

/// Load cached tables into the context; silently does nothing when the cache
/// is absent, unreadable, or of a different version.
pub fn load_into(ctx: &mut WgContext) {
    let Some(path) = cache_path() else { return };
    let Ok(mut file) = std::fs::File::open(&path) else {
        return;
    };
    let mut buf = Vec::new();
    if file.read_to_end(&mut buf).is_err() {
        return;
    }
    let mut r = Reader { buf: &buf, pos: 0 };
    let Some(magic) = r.take(8) else { return };
    if magic != MAGIC || r.u32() != Some(VERSION) {
        return;
    }
    let _ = try_load(&mut r, ctx);
}

fn try_load(r: &mut Reader, ctx: &mut WgContext) -> Option<()> {
    let n_char = r.u32()? as usize;
    for _ in 0..n_char {
        let q = r.u32()?;
        let lambda = r.partition()?;
        let mu = r.partition()?;
        let chi = r.i64()?;
        ctx.characters(q).insert_entry(lambda, mu, chi);
    }
    let n_wg = r.u32()? as usize;
    for _ in 0..n_wg {
        let ctype = r.partition()?;
        let num = r.poly()?;
        let den = r.poly()?;
        if let Ok(f) = RatFun::new(num, den) {
            ctx.insert_ratfun(ctype, f);
        }
    }
    Some(())
}

/// Persist the context's memoized tables; errors are ignored (the cache is
/// advisory).
pub fn save_from(ctx: &mut WgContext) {
    let Some(path) = cache_path() else { return };
    if let Some(dir) = path.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    let mut w = Writer(Vec::new());
    w.0.extend_from_slice(MAGIC);
    w.u32(VERSION);
    let mut char_entries = Vec::new();
    for q in ctx.char_table_degrees() {
        for ((lambda, mu), &chi) in ctx.characters(q).entries() {
            char_entries.push((q, lambda.clone(), mu.clone(), chi));
        }
    }
    char_entries.sort();
    w.u32(char_entries.len() as u32);
    for (q, lambda, mu, chi) in &char_entries {
        w.u32(*q);
        w.partition(lambda);
        w.partition(mu);
        w.i64(*chi);
    }
    let mut wg_entries: Vec<(IntegerPartition, RatFun)> = ctx
        .cached_ratfuns()
        .map(|(t, f)| (t.clone(), f.clone()))
        .collect();
    wg_entries.sort_by(|a, b| a.0.cmp(&b.0));
    w.u32(wg_entries.len() as u32);
    for (ctype, f) in &wg_entries {
        w.partition(ctype);
        w.poly(f.num());
        w.poly(f.den());
    }
    if let Ok(mut file) = std::fs::File::create(&path) {
        let _ = file.write_all(&w.0);
    }
}
