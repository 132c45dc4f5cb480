from nli_sidecar.scoring import OfflineLexiconScorer, pick_scorer


def test_bridge_beats_surface_mismatch():
    # no shared content words with the hypothesis, only the emotion bridge
    scorer = OfflineLexiconScorer()
    scores = scorer.score_pairs(
        "I am delighted",
        ["This text expresses joy.", "This text expresses sadness."],
    )
    assert scores[0] > 0.7
    assert scores[1] < 0.3


def test_surface_overlap_counts():
    scorer = OfflineLexiconScorer()
    high, low = scorer.score_pairs(
        "the secret plan was leaked yesterday",
        ["A secret plan exists.", "Dolphins swim in the ocean."],
    )
    assert high > low


def test_neutral_pair_near_half():
    scorer = OfflineLexiconScorer()
    (s,) = scorer.score_pairs("completely unrelated words", ["other different terms"])
    assert abs(s - 0.5) < 1e-9


def test_opposite_emotion_pushes_down():
    scorer = OfflineLexiconScorer()
    joy, sadness = scorer.score_pairs(
        "such happy wonderful news",
        ["This text expresses joy.", "This text expresses sadness."],
    )
    assert joy > 0.5 > sadness


def test_scores_never_leave_unit_interval():
    scorer = OfflineLexiconScorer()
    premises = ["", "a", "furious terrified delighted mourning", "x " * 300]
    hyps = ["This text expresses anger.", "", "terror fury glee", "y " * 200]
    for p in premises:
        for s in scorer.score_pairs(p, hyps):
            assert 0.0 <= s <= 1.0


def test_pick_scorer_falls_back_offline():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        scorer = pick_scorer("some/nonexistent-model")
    assert scorer.model_id == "offline-lexicon/1"
