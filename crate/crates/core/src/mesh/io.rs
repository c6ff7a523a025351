//! OFF and OBJ readers and writers (triangles only).
//!
//! Positions are written with 17 significant digits so a write/read cycle
//! through decimal reproduces every f64 bit-exactly.

use super::{MeshError, SurfaceMesh};
use nalgebra::Vector3;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
}

impl MeshFormat {
    /// Guess from the file extension, defaulting to OFF.
    pub fn from_path(path: &Path) -> MeshFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("obj") => MeshFormat::Obj,
            _ => MeshFormat::Off,
        }
    }
}

pub fn load_mesh(path: &Path, format: MeshFormat) -> Result<SurfaceMesh, MeshError> {
    let file = std::fs::File::open(path)?;
    read_mesh(BufReader::new(file), format)
}

pub fn save_mesh(mesh: &SurfaceMesh, path: &Path, format: MeshFormat) -> Result<(), MeshError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_mesh(mesh, &mut file, format)?;
    Ok(())
}

pub fn read_mesh<R: Read>(reader: BufReader<R>, format: MeshFormat) -> Result<SurfaceMesh, MeshError> {
    match format {
        MeshFormat::Off => read_off(reader),
        MeshFormat::Obj => read_obj(reader),
    }
}

pub fn write_mesh<W: Write>(
    mesh: &SurfaceMesh,
    w: &mut W,
    format: MeshFormat,
) -> std::io::Result<()> {
    match format {
        MeshFormat::Off => write_off(mesh, w),
        MeshFormat::Obj => write_obj(mesh, w),
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> MeshError {
    MeshError::Parse {
        line,
        message: message.into(),
    }
}

fn read_off<R: Read>(reader: BufReader<R>) -> Result<SurfaceMesh, MeshError> {
    let mut lines = reader.lines().enumerate();
    let mut next_content = || -> Result<Option<(usize, String)>, MeshError> {
        for (i, line) in lines.by_ref() {
            let line = line?;
            let trimmed = line.split('#').next().unwrap_or("").trim().to_string();
            if !trimmed.is_empty() {
                return Ok(Some((i + 1, trimmed)));
            }
        }
        Ok(None)
    };

    let (lno, header) = next_content()?.ok_or_else(|| parse_err(0, "empty file"))?;
    if header != "OFF" {
        return Err(parse_err(lno, format!("expected OFF header, found '{header}'")));
    }
    let (lno, counts) = next_content()?.ok_or_else(|| parse_err(lno, "missing count line"))?;
    let parts: Vec<&str> = counts.split_whitespace().collect();
    if parts.len() < 2 {
        return Err(parse_err(lno, "count line needs vertex and face counts"));
    }
    let nv: usize = parts[0]
        .parse()
        .map_err(|_| parse_err(lno, "bad vertex count"))?;
    let nf: usize = parts[1]
        .parse()
        .map_err(|_| parse_err(lno, "bad face count"))?;

    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (lno, line) = next_content()?.ok_or_else(|| parse_err(0, "unexpected end of vertices"))?;
        let nums: Vec<&str> = line.split_whitespace().collect();
        if nums.len() < 3 {
            return Err(parse_err(lno, "vertex line needs 3 coordinates"));
        }
        let mut p = [0.0f64; 3];
        for (slot, s) in p.iter_mut().zip(&nums) {
            *slot = s
                .parse()
                .map_err(|_| parse_err(lno, format!("bad coordinate '{s}'")))?;
        }
        positions.push(Vector3::new(p[0], p[1], p[2]));
    }

    let mut triangles = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (lno, line) = next_content()?.ok_or_else(|| parse_err(0, "unexpected end of faces"))?;
        let nums: Vec<&str> = line.split_whitespace().collect();
        let arity: usize = nums[0]
            .parse()
            .map_err(|_| parse_err(lno, "bad face arity"))?;
        if arity != 3 || nums.len() < 4 {
            return Err(parse_err(lno, "only triangle faces are supported"));
        }
        let mut tri = [0usize; 3];
        for (slot, s) in tri.iter_mut().zip(&nums[1..4]) {
            *slot = s
                .parse()
                .map_err(|_| parse_err(lno, format!("bad vertex index '{s}'")))?;
        }
        triangles.push(tri);
    }

    SurfaceMesh::new(positions, triangles)
}

fn read_obj<R: Read>(reader: BufReader<R>) -> Result<SurfaceMesh, MeshError> {
    let mut positions = Vec::new();
    let mut triangles = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let lno = i + 1;
        let line = line?;
        let trimmed = line.split('#').next().unwrap_or("").trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        match parts.next() {
            Some("v") => {
                let mut p = [0.0f64; 3];
                for slot in &mut p {
                    let s = parts
                        .next()
                        .ok_or_else(|| parse_err(lno, "vertex needs 3 coordinates"))?;
                    *slot = s
                        .parse()
                        .map_err(|_| parse_err(lno, format!("bad coordinate '{s}'")))?;
                }
                positions.push(Vector3::new(p[0], p[1], p[2]));
            }
            Some("f") => {
                let mut tri = [0usize; 3];
                for slot in &mut tri {
                    let s = parts
                        .next()
                        .ok_or_else(|| parse_err(lno, "face needs 3 vertices"))?;
                    // accept v, v/vt, v/vt/vn references; only v is used
                    let v = s.split('/').next().unwrap_or(s);
                    let idx: i64 = v
                        .parse()
                        .map_err(|_| parse_err(lno, format!("bad vertex reference '{s}'")))?;
                    if idx < 1 {
                        return Err(parse_err(lno, "only positive vertex references supported"));
                    }
                    *slot = (idx - 1) as usize;
                }
                if parts.next().is_some() {
                    return Err(parse_err(lno, "only triangle faces are supported"));
                }
                triangles.push(tri);
            }
            _ => {} // ignore normals, texcoords, groups, materials
        }
    }
    SurfaceMesh::new(positions, triangles)
}

fn write_off<W: Write>(mesh: &SurfaceMesh, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "OFF")?;
    writeln!(
        w,
        "{} {} {}",
        mesh.vertex_count(),
        mesh.face_count(),
        mesh.edge_count()
    )?;
    for p in mesh.positions() {
        writeln!(w, "{:.16e} {:.16e} {:.16e}", p.x, p.y, p.z)?;
    }
    for tri in mesh.triangles() {
        writeln!(w, "3 {} {} {}", tri[0], tri[1], tri[2])?;
    }
    Ok(())
}

fn write_obj<W: Write>(mesh: &SurfaceMesh, w: &mut W) -> std::io::Result<()> {
    for p in mesh.positions() {
        writeln!(w, "v {:.16e} {:.16e} {:.16e}", p.x, p.y, p.z)?;
    }
    for tri in mesh.triangles() {
        writeln!(w, "f {} {} {}", tri[0] + 1, tri[1] + 1, tri[2] + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::BufReader;

    fn tet() -> SurfaceMesh {
        let p = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(0.0, 0.0, 1.0),
        ];
        let t = vec![[0, 2, 1], [0, 1, 3], [1, 2, 3], [0, 3, 2]];
        SurfaceMesh::new(p, t).unwrap()
    }

    #[test]
    fn off_roundtrip_is_bitexact() {
        let mesh = tet();
        // scale by an irrational factor so coordinates are not short decimals
        let p: Vec<Vector3<f64>> = mesh
            .positions()
            .iter()
            .map(|q| q * std::f64::consts::PI + Vector3::new(1.0 / 3.0, 0.1, -2.0 / 7.0))
            .collect();
        let mesh = SurfaceMesh::new(p, mesh.triangles().to_vec()).unwrap();

        let mut buf = Vec::new();
        write_mesh(&mesh, &mut buf, MeshFormat::Off).unwrap();
        let back = read_mesh(BufReader::new(&buf[..]), MeshFormat::Off).unwrap();
        assert_eq!(back.vertex_count(), mesh.vertex_count());
        assert_eq!(back.edge_count(), mesh.edge_count());
        assert_eq!(back.face_count(), mesh.face_count());
        for (a, b) in back.positions().iter().zip(mesh.positions()) {
            assert_eq!(a, b, "positions must round-trip bit-exactly");
        }
    }

    #[test]
    fn obj_roundtrip_is_bitexact() {
        let mesh = tet();
        let mut buf = Vec::new();
        write_mesh(&mesh, &mut buf, MeshFormat::Obj).unwrap();
        let back = read_mesh(BufReader::new(&buf[..]), MeshFormat::Obj).unwrap();
        assert_eq!(back.face_count(), mesh.face_count());
        for (a, b) in back.positions().iter().zip(mesh.positions()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn off_rejects_out_of_range_index() {
        let text = "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 9\n";
        let err = read_mesh(BufReader::new(text.as_bytes()), MeshFormat::Off).unwrap_err();
        assert!(matches!(err, MeshError::VertexOutOfRange { vertex: 9, .. }));
    }

    #[test]
    fn off_rejects_bad_header() {
        let text = "PLY\n3 1 0\n";
        let err = read_mesh(BufReader::new(text.as_bytes()), MeshFormat::Off).unwrap_err();
        assert!(matches!(err, MeshError::Parse { line: 1, .. }));
    }

    #[test]
    fn obj_accepts_slash_references() {
        let text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1 2/2 3/3\n";
        let mesh = read_mesh(BufReader::new(text.as_bytes()), MeshFormat::Obj).unwrap();
        assert_eq!(mesh.face_count(), 1);
    }
}
