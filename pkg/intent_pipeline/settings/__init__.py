from .manager import SettingsManager, settings_manager
