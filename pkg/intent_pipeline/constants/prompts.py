from typing import List

from intent_pipeline.constants.config_types import ComponentRecord, TemplateRecord

UNKNOWN_TAG = "unknown"

TIMESTAMP_SLOT = "{timestamp}"
BEHAVIOR_SLOT = "{behavior_sequence}"

# Affinity layout: click, cart, favorite, purchase, recency, diversity, frequency,
# then one weight per configured scenario (payment_success, shipment_tracking,
# shopping_cart, order_list by default).
DEFAULT_TEMPLATES: List[TemplateRecord] = [
    {
        "id": "next_query",
        "scenario_ids": [],
        "body": (
            "Given a timestamp {timestamp} and a user behavior sequence "
            "B = [{behavior_sequence}], please infer the user's next search intent, "
            "and generate the most likely search query that reflects the user's "
            "latent requirement.\nOutput: <Predicted search query>."
        ),
        "affinity": [0.2, 0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.0, 0.0, 0.0, 0.0],
    },
    {
        "id": "post_purchase",
        "scenario_ids": ["payment_success", "shipment_tracking", "order_list"],
        "body": (
            "Given a timestamp {timestamp} and a user behavior sequence "
            "B = [{behavior_sequence}] that ends around a completed order, please "
            "infer the user's next search intent after the purchase, and generate "
            "the most likely search query for a complementary need.\n"
            "Output: <Predicted search query>."
        ),
        "affinity": [0.0, 0.1, 0.1, 1.0, 0.3, 0.0, 0.1, 0.2, 0.2, 0.0, 0.2],
    },
    {
        "id": "cart_explore",
        "scenario_ids": ["shopping_cart"],
        "body": (
            "Given a timestamp {timestamp} and a user behavior sequence "
            "B = [{behavior_sequence}] collected while the user compares items in "
            "the cart, please infer the user's next search intent, and generate "
            "the most likely search query that narrows the comparison.\n"
            "Output: <Predicted search query>."
        ),
        "affinity": [0.2, 1.0, 0.5, 0.0, 0.2, 0.4, 0.1, 0.0, 0.0, 0.3, 0.0],
    },
]

DEFAULT_COMPONENTS: List[ComponentRecord] = [
    {
        "id": "recency_hint",
        "text": "Weigh the most recent interactions more heavily than older ones.",
        "affinity": [0.0, 0.0, 0.0, 0.0, 0.6, -0.2, 0.1, 0.0, 0.0, 0.0, 0.0],
    },
    {
        "id": "category_focus",
        "text": "The user concentrates on few categories; keep the query inside them.",
        "affinity": [0.4, 0.1, 0.0, 0.0, 0.0, -0.6, 0.0, 0.0, 0.0, 0.0, 0.0],
    },
    {
        "id": "complement_hint",
        "text": (
            "If the user just bought an item, prefer a complementary product over "
            "the same item."
        ),
        "affinity": [0.0, 0.3, 0.0, 0.9, 0.0, 0.0, 0.0, 0.2, 0.1, 0.0, 0.1],
    },
    {
        "id": "exploration_hint",
        "text": "The user is browsing widely; a broader category query is acceptable.",
        "affinity": [0.1, 0.0, 0.1, 0.0, 0.0, 0.7, 0.2, 0.0, 0.0, 0.1, 0.0],
    },
    {
        "id": "output_format",
        "text": "Answer with a single short search query on one line.",
        "affinity": [0.0, 0.0, 0.0, 0.0, 0.05, 0.0, 0.05, 0.0, 0.0, 0.0, 0.0],
    },
]

EVAL_CRITERIA = ("Semantic Consistency", "Logical Coherence", "Expression Quality")

EVAL_PROMPT = (
    "Given a user behavior sequence B = [{behavior_sequence}], and a candidate "
    "search query q = \"{query}\" generated for next-query prediction, please "
    "evaluate the quality of q from the following three aspects:\n"
    "- Semantic Consistency: whether q is semantically aligned with the latent "
    "intent implied by B.\n"
    "- Logical Coherence: whether q reflects a reasonable intent transition given "
    "the behavior sequence.\n"
    "- Expression Quality: whether q avoids trivial template reuse and is "
    "expressed in a natural manner.\n"
    "Output: three normalized scores in [0, 1] as JSON "
    '{"sem": S_sem, "logic": S_logic, "style": S_style}.'
)
