use rivage::cmoracle::hilbert_class_polynomial;
use rivage::Error;

#[test]
fn precision_ceiling_is_enforced() {
    std::env::set_var("RIVAGE_PRECISION_MAX", "100");
    assert!(matches!(hilbert_class_polynomial(-3_999), Err(Error::Precision(_))));
    assert!(hilbert_class_polynomial(-4).is_ok());
}
