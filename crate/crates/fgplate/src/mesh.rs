//! Structured quadrilateral mesh over the plate rectangle.

use crate::error::{Error, Result};

/// Uniform structured quad mesh of nx x ny elements over [0,a] x [0,b].
/// Nodes are numbered row-major (x fastest), elements likewise; element
/// connectivity is counter-clockwise starting at the lower-left corner.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub a: f64,
    pub b: f64,
    pub nx: usize,
    pub ny: usize,
    pub nodes: Vec<[f64; 2]>,
    pub elements: Vec<[usize; 4]>,
}

impl Mesh {
    pub fn structured(a: f64, b: f64, nx: usize, ny: usize) -> Result<Mesh> {
        if a <= 0.0 || b <= 0.0 {
            return Err(Error::mesh("plate dimensions must be positive"));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::mesh("need at least 2 elements per direction"));
        }
        let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                nodes.push([a * i as f64 / nx as f64, b * j as f64 / ny as f64]);
            }
        }
        let mut elements = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let n0 = j * (nx + 1) + i;
                elements.push([n0, n0 + 1, n0 + nx + 2, n0 + nx + 1]);
            }
        }
        Ok(Mesh {
            a,
            b,
            nx,
            ny,
            nodes,
            elements,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn element_coords(&self, e: usize) -> [[f64; 2]; 4] {
        let c = self.elements[e];
        [
            self.nodes[c[0]],
            self.nodes[c[1]],
            self.nodes[c[2]],
            self.nodes[c[3]],
        ]
    }

    /// Axis-aligned bounds (x0, y0, x1, y1) of an element.
    pub fn element_rect(&self, e: usize) -> [f64; 4] {
        let p = self.element_coords(e);
        [p[0][0], p[0][1], p[2][0], p[2][1]]
    }

    /// Characteristic element size.
    pub fn element_size(&self) -> f64 {
        (self.a / self.nx as f64).max(self.b / self.ny as f64)
    }

    /// Elements whose support contains the given node (up to four).
    pub fn node_support(&self, node: usize) -> Vec<usize> {
        let stride = self.nx + 1;
        let i = node % stride;
        let j = node / stride;
        let mut out = Vec::with_capacity(4);
        for (dj, di) in [(1usize, 1usize), (1, 0), (0, 1), (0, 0)] {
            if i >= di && j >= dj {
                let (ei, ej) = (i - di, j - dj);
                if ei < self.nx && ej < self.ny {
                    out.push(ej * self.nx + ei);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Nodes lying on the centerline y = b/2 (when ny is even), ordered by x.
    pub fn centerline_nodes(&self) -> Vec<usize> {
        let j = self.ny / 2;
        (0..=self.nx).map(|i| j * (self.nx + 1) + i).collect()
    }
}
