from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class IntentPipelineConfig(AppConfig):
    name = "intent_pipeline"
    verbose_name = _("Intent Pipeline")

    def ready(self) -> None:
        """Register the settings checks and configure logging from the
        ``INTENT_PIPELINE`` setting when the application starts."""
        from intent_pipeline.settings import checks  # noqa: F401
        from intent_pipeline.utils.get_conf import get_config
        from intent_pipeline.utils.set_conf import set_config

        conf = get_config()

        set_config(**conf)
