//! Transmit schemes and per-receiver models.
//!
//! A [`ReceivedModel`] describes what one receiver sees when it decodes one
//! stream: `scale · (G₀u₀ + Σ G_k I_k)`, where each aggregate `I_k` is an
//! integer combination of interfering streams.

mod channel;
mod gic;
mod model;
mod symmetric;
mod three_user;
mod x_channel;

pub use channel::{ChannelInstance, Gain, GainMode};
pub use gic::gic_single_stream_models;
pub use model::{
    Aggregate, AggregateMember, Labeling, ReceivedModel, SchemeBundle, SchemeParams, Stream, StreamId, SymbolSet,
    TransmitScheme,
};
pub use symmetric::symmetric_multilayer_model;
pub use three_user::{gic3_asymmetric_models, standardize_three_user, StandardizedThreeUser};
pub use x_channel::x_channel_models;
