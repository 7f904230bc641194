"""Hardware-aware hyperdimensional computing simulator.

Binary hypervector algebra, n-gram/record text encoders, an associative
memory classifier, plus behavioral models of single-FeFET XOR and majority
logic-in-memory gates with variation, delay, energy, area and endurance
accounting.
"""

from .assoc import AssociativeMemory
from .classifier import HDCTextClassifier
from .cost import (
    CostReport,
    SwitchTimeFit,
    encoder_cost,
    endurance_cycles,
    fit_switch_time,
    gate_delay,
    switch_time,
)
from .dataset import DataError, Dataset, load_dataset, split
from .device import (
    FeFETState,
    FerroParams,
    Pulse,
    VtClass,
    apply_pulse,
    new_device,
    read_current,
    sample_vt_offsets,
    threshold_voltage,
    vt_class,
)
from .encoding import (
    DEFAULT_ALPHABET,
    EncoderConfig,
    IdMemory,
    ItemMemory,
    Scheme,
    build_item_memory,
    encode_sequence_ngram,
    encode_sequence_record,
    encode_window,
    train_class,
    window_count,
)
from .gates import (
    GateKind,
    GateResult,
    MarginReport,
    decision_threshold,
    majority_gate,
    monte_carlo,
    verify_against_device,
    xor_gate,
)
from .hv import (
    Hypervector,
    bind,
    bundle,
    complement,
    hamming,
    make_rng,
    normalized_hamming,
    permute,
    random_hv,
)
from .pipeline import EvalReport, RunConfig, evaluate, run_once, sweep_d, sweep_n, train

__version__ = "0.1.0"
