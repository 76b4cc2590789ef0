//! SMW1 tensor container.
//!
//! ```text
//! "SMW1"  u32 tensor count
//! per tensor: u16 name length, UTF-8 name, u8 dtype (0 = float32), u8 ndim,
//!             ndim x u32 dims, prod(dims) x f32, row-major, last dim fastest
//! ```
//! All integers and floats are little-endian.

use super::NnError;

pub const MAGIC: &[u8; 4] = b"SMW1";
pub const DTYPE_F32: u8 = 0;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    pub name: String,
    pub dims: Vec<usize>,
    pub data: Vec<f32>,
}

impl Tensor {
    pub fn new(name: impl Into<String>, dims: Vec<usize>, data: Vec<f32>) -> Tensor {
        debug_assert_eq!(dims.iter().product::<usize>(), data.len());
        Tensor { name: name.into(), dims, data }
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], NnError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len()).ok_or(NnError::TruncatedFile)?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, NnError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, NnError> {
        let b = self.take(2)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32, NnError> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }
}

pub fn read_tensors(bytes: &[u8]) -> Result<Vec<Tensor>, NnError> {
    if bytes.len() < 4 {
        return Err(NnError::TruncatedFile);
    }
    if &bytes[..4] != MAGIC {
        return Err(NnError::BadMagic);
    }
    let mut r = Reader { bytes, pos: 4 };
    let count = r.u32()?;
    let mut tensors = Vec::with_capacity(count.min(64) as usize);
    for _ in 0..count {
        let name_len = r.u16()? as usize;
        let name = std::str::from_utf8(r.take(name_len)?)
            .map_err(|_| NnError::BadName)?
            .to_string();
        let dtype = r.u8()?;
        if dtype != DTYPE_F32 {
            return Err(NnError::UnknownDtype(dtype));
        }
        let ndim = r.u8()? as usize;
        let mut dims = Vec::with_capacity(ndim);
        for _ in 0..ndim {
            dims.push(r.u32()? as usize);
        }
        let count = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or(NnError::TruncatedFile)?;
        let raw = r.take(count.checked_mul(4).ok_or(NnError::TruncatedFile)?)?;
        let data = raw.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
        tensors.push(Tensor { name, dims, data });
    }
    Ok(tensors)
}

pub fn write_tensors(tensors: &[Tensor]) -> Vec<u8> {
    let payload: usize = tensors.iter().map(|t| 8 + t.name.len() + 4 * t.dims.len() + 4 * t.data.len()).sum();
    let mut out = Vec::with_capacity(8 + payload);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(tensors.len() as u32).to_le_bytes());
    for t in tensors {
        out.extend_from_slice(&(t.name.len() as u16).to_le_bytes());
        out.extend_from_slice(t.name.as_bytes());
        out.push(DTYPE_F32);
        out.push(t.dims.len() as u8);
        for &d in &t.dims {
            out.extend_from_slice(&(d as u32).to_le_bytes());
        }
        for &v in &t.data {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_bits() {
        let tensors = vec![
            Tensor::new("a", vec![2, 3], vec![0.0, -0.0, 1.5, f32::MIN_POSITIVE, -3.25e-8, 7.0]),
            Tensor::new("scalar", vec![], vec![42.0]),
        ];
        let bytes = write_tensors(&tensors);
        let back = read_tensors(&bytes).unwrap();
        assert_eq!(back.len(), 2);
        for (a, b) in tensors.iter().zip(&back) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.dims, b.dims);
            let bits = |t: &Tensor| t.data.iter().map(|v| v.to_bits()).collect::<Vec<_>>();
            assert_eq!(bits(a), bits(b));
        }
    }

    #[test]
    fn header_errors() {
        assert_eq!(read_tensors(b"XXXX\0\0\0\0"), Err(NnError::BadMagic));
        assert_eq!(read_tensors(b"SMW"), Err(NnError::TruncatedFile));
        assert_eq!(read_tensors(b"SMW1\x01\0\0\0"), Err(NnError::TruncatedFile));
        let mut bytes = write_tensors(&[Tensor::new("w", vec![1], vec![1.0])]);
        bytes[8 + 2 + 1] = 7;
        assert_eq!(read_tensors(&bytes), Err(NnError::UnknownDtype(7)));
        let bytes = write_tensors(&[Tensor::new("w", vec![4], vec![1.0; 4])]);
        assert_eq!(read_tensors(&bytes[..bytes.len() - 1]), Err(NnError::TruncatedFile));
    }
}
