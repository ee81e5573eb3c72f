"""
A simple message bus for verification progress events.
"""
import logging
from typing import Any, Callable, Dict, List

# Type alias for a message
Message = Dict[str, Any]
# Type alias for a listener callback function
Listener = Callable[[Message], None]

# Topics published by the verification harness
CHECK_TOPIC = 'verify.check'
FINDING_TOPIC = 'verify.finding'
DONE_TOPIC = 'verify.done'


class MessageBus:
    """
    A centralized publish/subscribe bus.

    The verification harness publishes one message per check, per finding
    and per finished job; the CLI and tests subscribe listeners for logging
    or collection without the harness knowing about them.
    """

    def __init__(self):
        self._subscriptions: Dict[str, List[Listener]] = {}
        logging.debug("MessageBus created.")

    def subscribe(self, topic: str, listener: Listener):
        """
        Subscribes a listener function to a topic.

        Args:
            topic: The topic to subscribe to (e.g., 'verify.done').
            listener: The callback function to execute when a message is published.
        """
        self._subscriptions.setdefault(topic, []).append(listener)
        logging.debug(f"New subscription to topic '{topic}'.")

    def publish(self, topic: str, message: Message):
        """
        Publishes a message to a topic, notifying all subscribers in
        subscription order.

        Args:
            topic: The topic to publish the message to.
            message: The message payload dictionary.
        """
        for listener in self._subscriptions.get(topic, ()):
            listener(message)


def logging_listener(level: int = logging.INFO) -> Listener:
    """A listener that writes each message to the log."""
    def listen(message: Message):
        logging.log(level, " ".join(f"{k}={v}" for k, v in message.items()))
    return listen
