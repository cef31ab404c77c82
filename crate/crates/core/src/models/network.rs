//! Parameter storage and the two scorers. Each scorer keeps all of its
//! parameters in one flat vector so the optimizer and gradient checks can
//! treat models uniformly.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, ArrayViewMut1, ArrayViewMut2, Axis};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Nonlinearity {
    Relu,
    Tanh,
}

impl Nonlinearity {
    pub fn id(self) -> &'static str {
        match self {
            Nonlinearity::Relu => "relu",
            Nonlinearity::Tanh => "tanh",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        match id {
            "relu" => Some(Nonlinearity::Relu),
            "tanh" => Some(Nonlinearity::Tanh),
            _ => None,
        }
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Nonlinearity::Relu => x.max(0.0),
            Nonlinearity::Tanh => x.tanh(),
        }
    }

    /// Derivative in terms of the pre-activation `z` and activation `a`.
    fn derivative(self, z: f64, a: f64) -> f64 {
        match self {
            Nonlinearity::Relu => {
                if z > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Nonlinearity::Tanh => 1.0 - a * a,
        }
    }
}

/// Score = weights · input + bias.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearScorer {
    pub(crate) params: Vec<f64>,
}

impl LinearScorer {
    pub fn zeros(input_dim: usize) -> Self {
        Self {
            params: vec![0.0; input_dim + 1],
        }
    }

    pub fn from_weights(weights: &[f64], bias: f64) -> Self {
        let mut params = weights.to_vec();
        params.push(bias);
        Self { params }
    }

    pub fn input_dim(&self) -> usize {
        self.params.len() - 1
    }

    pub fn weights(&self) -> &[f64] {
        &self.params[..self.input_dim()]
    }

    pub fn bias(&self) -> f64 {
        self.params[self.input_dim()]
    }

    pub fn scores(&self, inputs: ArrayView2<f64>) -> Array1<f64> {
        let w = ArrayView1::from(self.weights());
        inputs.dot(&w) + self.bias()
    }

    /// Accumulates `d loss / d params` given `d loss / d scores`.
    pub fn backward(&self, inputs: ArrayView2<f64>, d_scores: ArrayView1<f64>, grad: &mut [f64]) {
        let d = self.input_dim();
        let (gw, gb) = grad.split_at_mut(d);
        let mut gw = ArrayViewMut1::from(gw);
        gw += &inputs.t().dot(&d_scores);
        gb[0] += d_scores.sum();
    }
}

/// Two hidden layers and a scalar output.
#[derive(Debug, Clone, PartialEq)]
pub struct FeedforwardScorer {
    pub(crate) input_dim: usize,
    pub(crate) hidden: [usize; 2],
    pub(crate) nonlinearity: Nonlinearity,
    pub(crate) params: Vec<f64>,
}

/// Offsets of each parameter block within the flat vector.
struct Layout {
    w1: (usize, usize),
    b1: usize,
    w2: (usize, usize),
    b2: usize,
    w3: usize,
    b3: usize,
    len: usize,
}

impl Layout {
    fn new(input: usize, [h1, h2]: [usize; 2]) -> Self {
        let w1 = (0, h1 * input);
        let b1 = w1.1;
        let w2 = (b1 + h1, h2 * h1);
        let b2 = w2.0 + w2.1;
        let w3 = b2 + h2;
        let b3 = w3 + h2;
        Self {
            w1,
            b1,
            w2,
            b2,
            w3,
            b3,
            len: b3 + 1,
        }
    }
}

pub(crate) struct Activations {
    z1: Array2<f64>,
    a1: Array2<f64>,
    z2: Array2<f64>,
    a2: Array2<f64>,
}

impl FeedforwardScorer {
    pub fn parameter_count(input_dim: usize, hidden: [usize; 2]) -> usize {
        Layout::new(input_dim, hidden).len
    }

    pub fn zeros(input_dim: usize, hidden: [usize; 2], nonlinearity: Nonlinearity) -> Self {
        Self {
            input_dim,
            hidden,
            nonlinearity,
            params: vec![0.0; Self::parameter_count(input_dim, hidden)],
        }
    }

    /// Uniform Glorot initialisation of the weights, zero biases.
    pub fn random<R: Rng>(
        input_dim: usize,
        hidden: [usize; 2],
        nonlinearity: Nonlinearity,
        rng: &mut R,
    ) -> Self {
        let mut model = Self::zeros(input_dim, hidden, nonlinearity);
        let layout = Layout::new(input_dim, hidden);
        let blocks = [
            (layout.w1, input_dim, hidden[0]),
            (layout.w2, hidden[0], hidden[1]),
            ((layout.w3, hidden[1]), hidden[1], 1),
        ];
        for ((start, len), fan_in, fan_out) in blocks {
            let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
            for w in &mut model.params[start..start + len] {
                *w = rng.gen_range(-limit..limit);
            }
        }
        model
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn hidden(&self) -> [usize; 2] {
        self.hidden
    }

    pub fn nonlinearity(&self) -> Nonlinearity {
        self.nonlinearity
    }

    fn layout(&self) -> Layout {
        Layout::new(self.input_dim, self.hidden)
    }

    fn matrix(&self, (start, len): (usize, usize), rows: usize, cols: usize) -> ArrayView2<'_, f64> {
        ArrayView2::from_shape((rows, cols), &self.params[start..start + len]).expect("layout")
    }

    fn vector(&self, start: usize, len: usize) -> ArrayView1<'_, f64> {
        ArrayView1::from(&self.params[start..start + len])
    }

    pub(crate) fn forward(&self, inputs: ArrayView2<f64>) -> (Array1<f64>, Activations) {
        let l = self.layout();
        let [h1, h2] = self.hidden;
        let w1 = self.matrix(l.w1, h1, self.input_dim);
        let w2 = self.matrix(l.w2, h2, h1);
        let act = |z: &Array2<f64>| z.mapv(|x| self.nonlinearity.apply(x));

        let z1 = inputs.dot(&w1.t()) + self.vector(l.b1, h1);
        let a1 = act(&z1);
        let z2 = a1.dot(&w2.t()) + self.vector(l.b2, h2);
        let a2 = act(&z2);
        let scores = a2.dot(&self.vector(l.w3, h2)) + self.params[l.b3];
        (scores, Activations { z1, a1, z2, a2 })
    }

    pub fn scores(&self, inputs: ArrayView2<f64>) -> Array1<f64> {
        self.forward(inputs).0
    }

    /// Accumulates `d loss / d params` given `d loss / d scores`.
    pub(crate) fn backward(
        &self,
        inputs: ArrayView2<f64>,
        acts: &Activations,
        d_scores: ArrayView1<f64>,
        grad: &mut [f64],
    ) {
        let l = self.layout();
        let [h1, h2] = self.hidden;
        let w2 = self.matrix(l.w2, h2, h1);
        let w3 = self.vector(l.w3, h2);
        let nl = self.nonlinearity;

        // output layer
        {
            let mut gw3 = ArrayViewMut1::from(&mut grad[l.w3..l.w3 + h2]);
            gw3 += &acts.a2.t().dot(&d_scores);
        }
        grad[l.b3] += d_scores.sum();

        // second hidden layer
        let d_a2 = d_scores
            .insert_axis(Axis(1))
            .dot(&w3.insert_axis(Axis(0)));
        let mut d_z2 = d_a2;
        ndarray::Zip::from(&mut d_z2)
            .and(&acts.z2)
            .and(&acts.a2)
            .for_each(|d, &z, &a| *d *= nl.derivative(z, a));
        {
            let mut gw2 = ArrayViewMut2::from_shape((h2, h1), &mut grad[l.w2.0..l.w2.0 + l.w2.1])
                .expect("layout");
            gw2 += &d_z2.t().dot(&acts.a1);
        }
        {
            let mut gb2 = ArrayViewMut1::from(&mut grad[l.b2..l.b2 + h2]);
            gb2 += &d_z2.sum_axis(Axis(0));
        }

        // first hidden layer
        let mut d_z1 = d_z2.dot(&w2);
        ndarray::Zip::from(&mut d_z1)
            .and(&acts.z1)
            .and(&acts.a1)
            .for_each(|d, &z, &a| *d *= nl.derivative(z, a));
        {
            let mut gw1 =
                ArrayViewMut2::from_shape((h1, self.input_dim), &mut grad[l.w1.0..l.w1.0 + l.w1.1])
                    .expect("layout");
            gw1 += &d_z1.t().dot(&inputs);
        }
        let mut gb1 = ArrayViewMut1::from(&mut grad[l.b1..l.b1 + h1]);
        gb1 += &d_z1.sum_axis(Axis(0));
    }
}
